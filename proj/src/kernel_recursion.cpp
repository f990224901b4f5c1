#include "wpvol/kernel_recursion.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace wpvol {

namespace {

bool stable(int g, int n) { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

// Sorted element list of a bitmask over {2..n}.
std::vector<uint32_t> subset_elements(unsigned mask, int n) {
    std::vector<uint32_t> out;
    for (int t = 0; t < n - 1; ++t)
        if (mask & (1u << t)) out.push_back(static_cast<uint32_t>(t + 2));
    return out;
}

// Relabels p's boundary slots offset+1, offset+2, ... onto `targets`.
MPoly relabel_tail(const MPoly& p, int offset, const std::vector<uint32_t>& targets) {
    std::map<uint32_t, uint32_t> slot_map;
    for (size_t t = 0; t < targets.size(); ++t)
        slot_map.emplace(static_cast<uint32_t>(offset + 1 + t), targets[t]);
    return relabel_boundaries(p, slot_map);
}

}  // namespace

MPoly kernel_single_moment(int i, uint32_t j_boundary, int max_beta) {
    if (i < 1) throw std::invalid_argument("kernel_single_moment: i >= 1 required");
    if (i > max_beta)
        throw std::invalid_argument("kernel_single_moment: beta table bound exceeded");
    MPoly out;
    for (int m = 0; m <= i; ++m) {
        int a = i - m;
        Rat pref = Rat(1) / factorial(2 * a);
        for (int c = 0; c <= a; ++c) {
            Rat coeff = pref * binomial(2 * a, 2 * c) / Rat(2 * c + 1);
            Monomial mono;
            mono.emplace_back(sym_beta(m).id(), 1);
            if (c > 0) mono.emplace_back(sym_b(1).id(), static_cast<uint32_t>(c));
            if (a - c > 0) mono.emplace_back(sym_b(j_boundary).id(), static_cast<uint32_t>(a - c));
            out.add_term(std::move(mono), coeff);
        }
    }
    return out;
}

MPoly kernel_double_moment(int i, int j) {
    if (i < 1 || j < 1) throw std::invalid_argument("kernel_double_moment: i, j >= 1 required");
    int total = i + j;
    MPoly out;
    for (int m = 0; m <= total; ++m) {
        int a = total - m;
        Rat coeff = Rat(1) / (Rat(2) * factorial(2 * a + 1));
        Monomial mono;
        mono.emplace_back(sym_beta(m).id(), 1);
        if (a > 0) mono.emplace_back(sym_b(1).id(), static_cast<uint32_t>(a));
        out.add_term(std::move(mono), coeff);
    }
    return out;
}

namespace {

std::recursive_mutex g_tight_mutex;
std::map<std::pair<int, int>, VolumePoly> g_tight_memo;

VolumePoly compute_tight(int g, int n) {
    VolumePoly out{g, n, Basis::Beta, MPoly()};
    if (g == 0 && n == 3) {
        out.poly = MPoly::variable(sym_beta(0));
        return out;
    }
    if (g == 1 && n == 1) {
        out.poly = MPoly::variable(sym_beta(1)).scaled(rat(1, 8));
        out.poly += (MPoly::variable(sym_beta(0)) * MPoly::variable(sym_b(1))).scaled(rat(1, 48));
        return out;
    }

    MPoly acc;
    // Non-separating term: coefficients of T_{g-1,n+1}(x, y, L_2..L_n).
    // Coefficients are extracted before relabeling so the x,y slots cannot
    // collide with the surviving boundary labels.
    if (g >= 1 && stable(g - 1, n + 1)) {
        auto tail = subset_elements(~0u, n);  // {2..n}
        for (const auto& [ks, rest] :
             coefficients_in2(tight_volume(g - 1, n + 1).poly, sym_b(1), sym_b(2)))
            acc += relabel_tail(rest, 2, tail) *
                   kernel_double_moment(static_cast<int>(ks.first) + 1,
                                        static_cast<int>(ks.second) + 1)
                       .scaled(factorial(2 * ks.first + 1) * factorial(2 * ks.second + 1));
    }
    // Separating terms over ordered pairs (g1, I), (g2, J).
    unsigned full = n >= 2 ? (1u << (n - 1)) - 1u : 0u;
    for (int g1 = 0; g1 <= g; ++g1) {
        int g2 = g - g1;
        for (unsigned mask = 0; mask <= full; ++mask) {
            auto I = subset_elements(mask, n);
            auto J = subset_elements(full & ~mask, n);
            if (!stable(g1, 1 + static_cast<int>(I.size()))) continue;
            if (!stable(g2, 1 + static_cast<int>(J.size()))) continue;
            auto ca = coefficients_in(tight_volume(g1, 1 + I.size()).poly, sym_b(1));
            auto cb = coefficients_in(tight_volume(g2, 1 + J.size()).poly, sym_b(1));
            for (const auto& [ka, ra] : ca)
                for (const auto& [kb, rb] : cb)
                    acc += (relabel_tail(ra, 1, I) * relabel_tail(rb, 1, J)) *
                           kernel_double_moment(static_cast<int>(ka) + 1,
                                                static_cast<int>(kb) + 1)
                               .scaled(factorial(2 * ka + 1) * factorial(2 * kb + 1));
            if (full == 0) break;  // n == 1: only the empty mask
        }
    }
    // One fewer boundary: the (t +- L_j) kernel terms.
    if (n >= 2 && stable(g, n - 1)) {
        int max_beta = 3 * g - 3 + n;
        auto cs = coefficients_in(tight_volume(g, n - 1).poly, sym_b(1));
        for (int j = 2; j <= n; ++j) {
            std::vector<uint32_t> rest_slots;
            for (int t = 2; t <= n; ++t)
                if (t != j) rest_slots.push_back(static_cast<uint32_t>(t));
            for (const auto& [k, rest] : cs)
                acc += relabel_tail(rest, 1, rest_slots) *
                       kernel_single_moment(static_cast<int>(k) + 1,
                                            static_cast<uint32_t>(j), max_beta)
                           .scaled(factorial(2 * k + 1));
        }
    }
    out.poly = std::move(acc);
    return out;
}

}  // namespace

const VolumePoly& tight_volume(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
        throw std::domain_error("tight_volume: unstable (g,n)");
    std::lock_guard<std::recursive_mutex> lock(g_tight_mutex);
    auto it = g_tight_memo.find({g, n});
    if (it == g_tight_memo.end())
        it = g_tight_memo.emplace(std::make_pair(g, n), compute_tight(g, n)).first;
    return it->second;
}

VolumePoly wp_volume(int g, int n) { return convert_basis(tight_volume(g, n), Basis::WP); }

void clear_tight_volume_memo() {
    std::lock_guard<std::recursive_mutex> lock(g_tight_mutex);
    g_tight_memo.clear();
}

}  // namespace wpvol
