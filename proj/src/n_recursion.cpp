#include "wpvol/n_recursion.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace wpvol {

namespace {

std::recursive_mutex g_mutex;
std::map<std::pair<int, std::vector<int>>, Rat> g_psi_memo;
std::map<std::pair<int, int>, VolumePoly> g_p_memo;

// Multiset as (value, multiplicity) pairs, values ascending.
std::vector<std::pair<int, int>> group(const std::vector<int>& d) {
    std::vector<std::pair<int, int>> out;
    for (int v : d) {
        if (!out.empty() && out.back().first == v)
            out.back().second++;
        else
            out.emplace_back(v, 1);
    }
    return out;
}

Rat psi_impl(int g, std::vector<int> d);

// Sum over sub-multisets A of alpha (given grouped) of
//   prod_v C(alpha_v, A_v) * psi(g1, A + {i}) * psi(g2, (alpha - A) + {j})
Rat split_sum(int g1, int g2, int i, int j, const std::vector<std::pair<int, int>>& grouped) {
    Rat acc(0);
    size_t nv = grouped.size();
    std::vector<int> take(nv, 0);
    while (true) {
        Rat ways(1);
        std::vector<int> A{i}, B{j};
        for (size_t t = 0; t < nv; ++t) {
            ways *= binomial(grouped[t].second, take[t]);
            for (int r = 0; r < take[t]; ++r) A.push_back(grouped[t].first);
            for (int r = 0; r < grouped[t].second - take[t]; ++r) B.push_back(grouped[t].first);
        }
        Rat fa = psi_impl(g1, A);
        if (fa != 0) acc += ways * fa * psi_impl(g2, B);
        // next multiplicity vector
        size_t t = 0;
        while (t < nv && take[t] == grouped[t].second) take[t++] = 0;
        if (t == nv) break;
        take[t]++;
    }
    return acc;
}

Rat psi_impl(int g, std::vector<int> d) {
    int n = static_cast<int>(d.size());
    if (g < 0) return Rat(0);
    for (int v : d)
        if (v < 0) return Rat(0);
    long level = std::accumulate(d.begin(), d.end(), 0L);
    if (level != 3L * g - 3 + n) return Rat(0);  // selection rule
    if (2 * g - 2 + n <= 0) return Rat(0);
    std::sort(d.begin(), d.end());
    if (g == 0 && n == 3) return Rat(1);  // <tau_0^3>_0

    {
        std::lock_guard<std::recursive_mutex> lock(g_mutex);
        auto it = g_psi_memo.find({g, d});
        if (it != g_psi_memo.end()) return it->second;
    }

    int k = d.back();  // largest index; k >= 1 here
    int p = k - 1;
    std::vector<int> alpha(d.begin(), d.end() - 1);
    auto grouped = group(alpha);

    Rat acc(0);
    // Pair-coupling terms: tau_v tau_{p+1} -> tau_{v+p}.
    for (size_t t = 0; t < grouped.size(); ++t) {
        auto [v, mult] = grouped[t];
        std::vector<int> rest = alpha;
        rest.erase(std::find(rest.begin(), rest.end(), v));
        rest.push_back(v + p);
        acc += Rat(mult) * double_factorial(2 * (v + p) + 1) / double_factorial(2 * v - 1) *
               psi_impl(g, rest);
    }
    // Quadratic terms: genus reduction and stable splittings.
    for (int i = 0; i + 1 <= p; ++i) {
        int j = p - 1 - i;
        Rat w = double_factorial(2 * i + 1) * double_factorial(2 * j + 1) / Rat(2);
        std::vector<int> lower = alpha;
        lower.push_back(i);
        lower.push_back(j);
        acc += w * psi_impl(g - 1, lower);
        for (int g1 = 0; g1 <= g; ++g1) acc += w * split_sum(g1, g - g1, i, j, grouped);
    }
    // Constant term of the p = 0 constraint.
    if (p == 0 && g == 1 && alpha.empty()) acc += rat(1, 8);
    acc /= double_factorial(2 * p + 3);

    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    g_psi_memo.emplace(std::make_pair(g, std::move(d)), acc);
    return acc;
}

bool pg0_partitions(std::vector<int>& dk, int k, int remaining,
                    const std::function<void(const std::vector<int>&)>& emit) {
    // dk[t] = d_{t+2}; each unit of d_k consumes (k-1) from `remaining`.
    if (remaining == 0) {
        emit(dk);
        return true;
    }
    if (k - 1 > remaining) return false;
    for (int cnt = 0; cnt * (k - 1) <= remaining; ++cnt) {
        dk.push_back(cnt);
        pg0_partitions(dk, k + 1, remaining - cnt * (k - 1), emit);
        dk.pop_back();
    }
    return true;
}

VolumePoly compute_p(int g, int n);

}  // namespace

Rat psi_intersection(int g, std::vector<int> d) { return psi_impl(g, std::move(d)); }

std::vector<std::tuple<int, std::vector<int>, Rat>> intersection_table_entries() {
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    std::vector<std::tuple<int, std::vector<int>, Rat>> out;
    out.reserve(g_psi_memo.size());
    for (const auto& [key, val] : g_psi_memo) out.emplace_back(key.first, key.second, val);
    return out;
}

MPoly pg0_polynomial(int g) {
    if (g < 2) throw std::domain_error("pg0_polynomial: g >= 2 required");
    MPoly out;
    std::vector<int> dk;
    auto emit = [&](const std::vector<int>& counts) {
        // counts[t] = d_{t+2}; bracket <tau_2^{d_2} tau_3^{d_3} ...>_g.
        std::vector<int> bracket;
        MPoly mono(Rat(1));
        for (size_t t = 0; t < counts.size(); ++t) {
            int k = static_cast<int>(t) + 2;
            for (int r = 0; r < counts[t]; ++r) bracket.push_back(k);
            if (counts[t] > 0) {
                MPoly f = MPoly::variable(sym_m(k - 1), counts[t])
                              .scaled(rat_pow(Rat(-1), counts[t]) / factorial(counts[t]));
                mono = mono * f;
            }
        }
        Rat val = psi_intersection(g, bracket);
        if (val != 0) out += mono.scaled(val);
    };
    std::vector<int> scratch;
    pg0_partitions(scratch, 2, 3 * g - 3, emit);
    return out;
}

namespace {

VolumePoly compute_p(int g, int n) {
    VolumePoly out{g, n, Basis::Moments, MPoly()};
    if (g == 0 && n == 3) {
        out.poly = MPoly(Rat(1));
        return out;
    }
    if (g == 1 && n == 1) {
        out.poly = (MPoly::variable(sym_b(1)).scaled(rat(1, 2)) -
                    MPoly::variable(sym_m(1)))
                       .scaled(rat(1, 24));
        return out;
    }
    if (n == 0) {
        out.poly = pg0_polynomial(g);
        return out;
    }

    // Previous polynomial with slots shifted to L_2..L_n.
    const MPoly& prev_raw = normalized_volume(g, n - 1).poly;
    std::map<uint32_t, uint32_t> shift;
    for (int t = 1; t <= n - 1; ++t) shift.emplace(t, t + 1);
    MPoly prev = relabel_boundaries(prev_raw, shift);

    MPoly b1 = MPoly::variable(sym_b(1));
    MPoly m1 = MPoly::variable(sym_m(1));
    MPoly acc;
    for (int p = 1; p <= 3 * g - 4 + n; ++p) {
        MPoly dp = derivative(prev, sym_m(p));
        if (dp.is_zero()) continue;
        MPoly weight = MPoly::variable(sym_m(p + 1));
        weight -= MPoly::variable(sym_b(1), p + 1)
                      .scaled(Rat(1) / (rat_pow(Rat(2), p + 1) * factorial(p + 1)));
        weight -= m1 * MPoly::variable(sym_m(p));
        weight += b1.scaled(rat(1, 2)) * MPoly::variable(sym_m(p));
        acc += weight * dp;
    }
    acc += (b1.scaled(rat(1, 2)) - m1).scaled(Rat(2 * g - 3 + n)) * prev;
    for (int i = 2; i <= n; ++i) acc += integrate_even(prev, i);
    out.poly = std::move(acc);
    return out;
}

}  // namespace

const VolumePoly& normalized_volume(int g, int n) {
    bool valid = (g >= 2 && n >= 0) || (g == 1 && n >= 1) || (g == 0 && n >= 3);
    if (!valid) throw std::domain_error("normalized_volume: out of range (g,n)");
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    auto it = g_p_memo.find({g, n});
    if (it == g_p_memo.end())
        it = g_p_memo.emplace(std::make_pair(g, n), compute_p(g, n)).first;
    return it->second;
}

VolumePoly tight_in_moments(int g, int n) {
    const VolumePoly& p = normalized_volume(g, n);
    VolumePoly out{g, n, Basis::Moments, MPoly()};
    out.poly = p.poly * MPoly::variable(sym_invM0(), static_cast<uint32_t>(2 * g - 2 + n));
    return out;
}

VolumePoly specialize_wp(const VolumePoly& v) {
    if (v.basis != Basis::Moments)
        throw std::invalid_argument("specialize_wp expects the moments basis");
    return VolumePoly{v.g, v.n, Basis::WP, specialize_moments_to_wp(v.poly)};
}

CheckReport string_dilaton_check(int g, int n) {
    bool in_range = (g == 0 && n >= 4) || (g == 1 && n >= 2) || (g >= 2 && n >= 1);
    if (!in_range) throw std::domain_error("string_dilaton_check: (g,n) outside corollary range");

    // T_{g,n} in capital moments: invM0 powers against M_k symbols, relying on
    // the M0 * invM0 cancellation for exact identities.
    auto capital = [](int gg, int nn) {
        MPoly p = tight_in_moments(gg, nn).poly;
        std::map<Symbol, MPoly> to_capital;
        int top = p.max_index_of_kind(SymKind::SmallM);
        for (int k = 1; k <= top; ++k)
            to_capital.emplace(sym_m(k), MPoly::variable(sym_M(k)) * MPoly::variable(sym_invM0()));
        return subst(p, to_capital);
    };
    MPoly t_full = capital(g, n);
    MPoly t_prev_raw = capital(g, n - 1);
    std::map<uint32_t, uint32_t> shift;
    for (int t = 1; t <= n - 1; ++t) shift.emplace(t, t + 1);
    MPoly t_prev = relabel_boundaries(t_prev_raw, shift);

    auto coeffs = coefficients_in(t_full, sym_b(1));
    MPoly lhs_string, lhs_dilaton;
    for (const auto& [p, cp] : coeffs) {
        Rat pref = rat_pow(Rat(2), p) * factorial(p);
        lhs_string += cp * MPoly::variable(sym_M(p)).scaled(pref);
        if (p >= 1) lhs_dilaton += cp * MPoly::variable(sym_M(p - 1)).scaled(pref);
    }
    MPoly rhs_string;
    for (int j = 2; j <= n; ++j) rhs_string += integrate_even(t_prev, j);
    if (g == 0 && n == 3) rhs_string += MPoly(Rat(1));
    MPoly rhs_dilaton = t_prev.scaled(Rat(2 * g - 3 + n));

    auto first_term = [](const MPoly& diff) {
        MPoly one;
        one.terms.emplace(diff.terms.begin()->first, diff.terms.begin()->second);
        return to_string(one);
    };
    CheckReport rep;
    MPoly ds = lhs_string - rhs_string;
    MPoly dd = lhs_dilaton - rhs_dilaton;
    if (!ds.is_zero()) {
        rep.ok = false;
        rep.detail = "string identity off by " + first_term(ds) + " ...";
    } else if (!dd.is_zero()) {
        rep.ok = false;
        rep.detail = "dilaton identity off by " + first_term(dd) + " ...";
    }
    return rep;
}

void clear_n_recursion_memo() {
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    g_psi_memo.clear();
    g_p_memo.clear();
}

}  // namespace wpvol
