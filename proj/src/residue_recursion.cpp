#include "wpvol/residue_recursion.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace wpvol {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool stable(int g, int n) { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

std::recursive_mutex g_mutex;
std::map<std::pair<int, int>, CorrelatorLaurent> g_memo;

// One factor of a splitting term: a list of (u exponent, slot z-exponents,
// coefficient). Slot exponents e mean z^{-e-2}; odd e appears transiently in
// the 0,2 series and cancels in the assembled bracket.
struct FactorTerm {
    int uexp;
    std::map<uint32_t, int> slot_exps;
    MPoly coeff;
};

// omega_{g', 1+|S|}(sign*u, z_S). Empty list encodes the zero correlator.
std::vector<FactorTerm> factor_terms(int gp, const std::vector<uint32_t>& slots, int sign,
                                     int u_cap) {
    int np = 1 + static_cast<int>(slots.size());
    std::vector<FactorTerm> out;
    if (gp == 0 && np == 2) {
        // omega_{0,2}(sign*u, z_j) = sum_k (k+1) (sign u)^k z_j^{-k-2}
        for (int k = 0; k <= u_cap; ++k) {
            Rat c(k + 1);
            if (sign < 0 && (k & 1)) c = -c;
            out.push_back({k, {{slots[0], k}}, MPoly(c)});
        }
        return out;
    }
    if (!stable(gp, np)) return out;  // omega_{0,0} = omega_{0,1} = 0
    const CorrelatorLaurent& w = omega(gp, np);
    for (const auto& [ks, c] : w.terms) {
        FactorTerm t{-2 * ks[0] - 2, {}, c};
        for (size_t i = 0; i < slots.size(); ++i) t.slot_exps.emplace(slots[i], 2 * ks[i + 1]);
        out.push_back(std::move(t));
    }
    return out;
}

CorrelatorLaurent compute_omega(int g, int n) {
    CorrelatorLaurent out;
    out.g = g;
    out.n = n;
    const int deg = 3 * g - 3 + n;
    const int u_cap = 2 * (3 * g - 2 + n);

    // Bracket of the recursion: map from z_2..z_n exponents to a Laurent
    // series in u. Only even, nonpositive u-exponents survive the residue.
    std::map<std::map<uint32_t, int>, LaurentSeries> bracket;
    auto add = [&](const std::map<uint32_t, int>& key, int uexp, const MPoly& c) {
        if (uexp > 0 && uexp > u_cap) return;
        bracket[key].add_coeff(uexp, c);
    };

    // omega_{g-1, n+1}(u, -u, z_2..z_n)
    if (g >= 1) {
        if (g == 1 && n == 1) {
            add({}, -2, MPoly(rat(1, 4)));  // omega_{0,2}(u,-u) = 1/(2u)^2
        } else if (stable(g - 1, n + 1)) {
            const CorrelatorLaurent& w = omega(g - 1, n + 1);
            for (const auto& [ks, c] : w.terms) {
                std::map<uint32_t, int> key;
                for (int i = 2; i <= n; ++i) key.emplace(static_cast<uint32_t>(i), 2 * ks[i]);
                add(key, -2 * ks[0] - 2 * ks[1] - 4, c);
            }
        }
    }
    // Ordered splittings (g1, I), (g2, J) with I and J partitioning {2..n}.
    // Vanishing factors are detected up front: this also keeps the term with
    // I = {2..n}, J = {} from re-entering omega(g, n) itself.
    auto vanishes = [](int gp, int np) { return !(gp == 0 && np == 2) && !stable(gp, np); };
    unsigned full = n >= 2 ? (1u << (n - 1)) - 1u : 0u;
    for (int g1 = 0; g1 <= g; ++g1) {
        for (unsigned mask = 0; mask <= full; ++mask) {
            std::vector<uint32_t> I, J;
            for (int t = 0; t < n - 1; ++t)
                ((mask >> t) & 1u ? I : J).push_back(static_cast<uint32_t>(t + 2));
            if (vanishes(g1, 1 + static_cast<int>(I.size())) ||
                vanishes(g - g1, 1 + static_cast<int>(J.size()))) {
                if (full == 0) break;
                continue;
            }
            auto fa = factor_terms(g1, I, +1, u_cap);
            if (fa.empty()) continue;
            auto fb = factor_terms(g - g1, J, -1, u_cap);
            for (const auto& a : fa)
                for (const auto& b : fb) {
                    int uexp = a.uexp + b.uexp;
                    if (uexp > 0) continue;  // cannot reach u^{-2s}, s >= 0... kept below
                    std::map<uint32_t, int> key = a.slot_exps;
                    key.insert(b.slot_exps.begin(), b.slot_exps.end());
                    add(key, uexp, a.coeff * b.coeff);
                }
            if (full == 0) break;
        }
    }

    // Residue against 1/(2u (z_1^2 - u^2) eta(u)): coefficient at u^{-2s}
    // pairs with beta_m z_1^{-2a-2}, a + m = s.
    for (auto& [key, series] : bracket) {
        for (int s = 0; s <= deg; ++s) {
            MPoly c = series.coeff(-2 * s);
            if (c.is_zero()) continue;
            for (int m = 0; m <= s; ++m) {
                int a = s - m;
                std::vector<int> ks(n, 0);
                ks[0] = a;
                bool odd = false;
                for (const auto& [slot, e] : key) {
                    if (e & 1) {
                        odd = true;
                        break;
                    }
                    ks[slot - 1] = e / 2;
                }
                if (odd)
                    throw std::logic_error("omega: odd boundary exponent survived the residue");
                MPoly contrib = (c * MPoly::variable(sym_beta(m))).scaled(rat(1, 2));
                auto [it, inserted] = out.terms.emplace(std::move(ks), contrib);
                if (!inserted) it->second += contrib;
            }
        }
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
    return out;
}

}  // namespace

const CorrelatorLaurent& omega(int g, int n) {
    if (!stable(g, n) || n < 1) throw std::domain_error("omega: unstable (g,n)");
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    auto it = g_memo.find({g, n});
    if (it == g_memo.end())
        it = g_memo.emplace(std::make_pair(g, n), compute_omega(g, n)).first;
    return it->second;
}

void clear_omega_memo() {
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    g_memo.clear();
}

CorrelatorLaurent omega_from_T(const VolumePoly& t) {
    CorrelatorLaurent out;
    out.g = t.g;
    out.n = t.n;
    for (const auto& [mono, c] : t.poly.terms) {
        std::vector<int> ks(t.n, 0);
        Monomial rest;
        for (const auto& [sid, e] : mono) {
            Symbol s = symbol_from_id(sid);
            if (s.kind == SymKind::B && s.index >= 1 && s.index <= static_cast<uint32_t>(t.n))
                ks[s.index - 1] = static_cast<int>(e);
            else
                rest.emplace_back(sid, e);
        }
        Rat scale(1);
        for (int k : ks) scale *= factorial(2 * k + 1);
        MPoly contrib;
        contrib.add_term(std::move(rest), c * scale);
        auto [it, inserted] = out.terms.emplace(std::move(ks), contrib);
        if (!inserted) it->second += contrib;
    }
    return out;
}

VolumePoly T_from_omega(const CorrelatorLaurent& w) {
    VolumePoly out{w.g, w.n, Basis::Beta, MPoly()};
    for (const auto& [ks, c] : w.terms) {
        Rat scale(1);
        Monomial bpart;
        for (size_t i = 0; i < ks.size(); ++i) {
            scale *= factorial(2 * ks[i] + 1);
            if (ks[i] > 0)
                bpart.emplace_back(sym_b(static_cast<uint32_t>(i + 1)).id(),
                                   static_cast<uint32_t>(ks[i]));
        }
        MPoly mono;
        mono.add_term(std::move(bpart), Rat(1) / scale);
        out.poly += c * mono;
    }
    return out;
}

double regular_correlator(int g, int n, const std::vector<double>& zs, const Weight& w,
                          const MomentDataNum& md) {
    if (static_cast<int>(zs.size()) != n)
        throw std::invalid_argument("regular_correlator: needs one z per boundary");
    for (double z : zs)
        if (!(z * z > 2.0 * md.R))
            throw std::domain_error("regular_correlator: requires z^2 > 2R");
    if (g == 0 && n == 1) {
        double z = zs[0];
        if (md.R == 0.0) return 0.0;
        auto f = [&](double r) { return z * std::pow(z * z - 2.0 * r, -1.5) * z_function(w, r); };
        double sign = md.R > 0 ? 1.0 : -1.0;
        return -sign *
               integrate_adaptive(f, std::min(0.0, md.R), std::max(0.0, md.R), 1e-13);
    }
    if (g == 0 && n == 2) {
        double x1 = std::sqrt(zs[0] * zs[0] - 2.0 * md.R);
        double x2 = std::sqrt(zs[1] * zs[1] - 2.0 * md.R);
        double main = zs[0] / x1 * zs[1] / x2 / ((x1 - x2) * (x1 - x2));
        return main - 1.0 / ((zs[0] - zs[1]) * (zs[0] - zs[1]));
    }
    const CorrelatorLaurent& om = omega(g, n);
    auto value_of = [&](Symbol s) -> double {
        if (s.kind == SymKind::Beta) return md.beta.at(s.index);
        throw std::invalid_argument("regular_correlator: unexpected symbol " + symbol_name(s));
    };
    double acc = 0.0;
    for (const auto& [ks, c] : om.terms) {
        double term = eval_double(c, value_of);
        for (int i = 0; i < n; ++i) {
            double x = std::sqrt(zs[i] * zs[i] - 2.0 * md.R);
            term *= std::pow(x, -2 * ks[i] - 2) * zs[i] / x;
        }
        acc += term;
    }
    return acc;
}

double disk_function_eta(double z, const Weight& w, const MomentDataNum& md) {
    double x = std::sqrt(z * z - 2.0 * md.R);
    // -z x eta(x) + z sin(2 pi z)/(2 pi) with eta split as eta_0 + delta:
    // the eta_0 part combines with the sine into a stable sin-difference,
    // z (sin(2 pi z) - sin(2 pi x))/(2 pi), with z - x = 2R/(z + x).
    double zmx = 2.0 * md.R / (z + x);
    double acc = z / kPi * std::cos(kPi * (z + x)) * std::sin(kPi * zmx);
    acc -= z * x * md.eta_delta(x);
    for (const auto& a : w.atoms) {
        // mu(cosh(Lz)) with b = L^2 (cos for cone points).
        double b = a.b();
        double c = b >= 0 ? std::cosh(std::sqrt(b) * z) : std::cos(std::sqrt(-b) * z);
        acc -= a.weight * c;
    }
    if (w.fzzt) {
        if (w.fzzt->z <= z)
            throw std::domain_error("disk_function_eta: FZZT requires z_brane > z");
        acc -= -std::exp(-w.fzzt->s0) * w.fzzt->z / (w.fzzt->z * w.fzzt->z - z * z);
    }
    return acc;
}

}  // namespace wpvol
