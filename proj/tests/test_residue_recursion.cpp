#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "wpvol/kernel_recursion.hpp"
#include "wpvol/residue_recursion.hpp"

using namespace wpvol;

namespace {

MPoly beta(uint32_t m) { return MPoly::variable(sym_beta(m)); }

std::vector<std::pair<int, int>> small_cells() {
    return {{0, 3}, {0, 4}, {0, 5}, {1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}};
}

}  // namespace

TEST_CASE("omega_{0,3} and omega_{1,1}") {
    const CorrelatorLaurent& w03 = omega(0, 3);
    REQUIRE(w03.terms.size() == 1);
    CHECK(w03.terms.at({0, 0, 0}) == beta(0));

    const CorrelatorLaurent& w11 = omega(1, 1);
    CHECK(w11.terms.at({0}) == beta(1).scaled(rat(1, 8)));
    CHECK(w11.terms.at({1}) == beta(0).scaled(rat(1, 8)));
}

TEST_CASE("unstable omega is rejected") {
    CHECK_THROWS_AS(omega(0, 2), std::domain_error);
    CHECK_THROWS_AS(omega(0, 0), std::domain_error);
}

TEST_CASE("laplace transform pairs T_{0,3} and T_{1,1}") {
    CorrelatorLaurent w = omega_from_T(tight_volume(0, 3));
    CHECK(w.terms.at({0, 0, 0}) == beta(0));
    // b_1/48 maps to (3!/48) z^{-4} = z^{-4}/8
    CorrelatorLaurent w11 = omega_from_T(tight_volume(1, 1));
    CHECK(w11.terms.at({1}) == beta(0).scaled(rat(1, 8)));
    CHECK(w11.terms.at({0}) == beta(1).scaled(rat(1, 8)));
}

TEST_CASE("omega_from_T and T_from_omega are mutually inverse") {
    std::mt19937 rng(2718);
    std::uniform_int_distribution<int> numer(-9, 9), denom(1, 7), expo(0, 3);
    for (int t = 0; t < 50; ++t) {
        VolumePoly v{1, 3, Basis::Beta, MPoly()};
        for (int term = 0; term < 5; ++term) {
            Monomial mono;
            for (uint32_t i = 1; i <= 3; ++i) {
                int e = expo(rng);
                if (e > 0) mono.emplace_back(sym_b(i).id(), e);
            }
            mono.emplace_back(sym_beta(expo(rng)).id(), 1);
            v.poly.add_term(std::move(mono), rat(numer(rng), denom(rng)));
        }
        CHECK(T_from_omega(omega_from_T(v)).poly == v.poly);
    }
}

TEST_CASE("residue recursion reproduces the kernel recursion") {
    for (auto [g, n] : small_cells()) {
        VolumePoly from_omega = T_from_omega(omega(g, n));
        CHECK(from_omega.poly == tight_volume(g, n).poly);
    }
}

TEST_CASE("omega is symmetric in its slots") {
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 2}, {1, 3}}) {
        const CorrelatorLaurent& w = omega(g, n);
        for (const auto& [ks, c] : w.terms) {
            std::vector<int> sorted_ks = ks;
            std::sort(sorted_ks.begin(), sorted_ks.end());
            std::vector<int> perm = ks;
            do {
                auto it = w.terms.find(perm);
                REQUIRE(it != w.terms.end());
                CHECK(it->second == c);
            } while (std::next_permutation(perm.begin(), perm.end()));
            (void)sorted_ks;
        }
    }
}

TEST_CASE("support bound attained") {
    for (auto [g, n] : small_cells()) {
        const CorrelatorLaurent& w = omega(g, n);
        int deg = 3 * g - 3 + n;
        int best = -1;
        for (const auto& [ks, c] : w.terms) {
            int total = 0;
            for (int k : ks) total += k;
            CHECK(total <= deg);
            best = std::max(best, total);
        }
        CHECK(best == deg);
    }
}

TEST_CASE("mu = 0 specialization matches the spectral curve of classical volumes") {
    for (auto [g, n] : small_cells()) {
        VolumePoly wp_from_omega = convert_basis(T_from_omega(omega(g, n)), Basis::WP);
        CHECK(wp_from_omega.poly == wp_volume(g, n).poly);
    }
}

TEST_CASE("cylinder function: closed form against quadrature") {
    // W_{0,2}(z1,z2) = int_0^R z1 (z1^2-2r)^{-3/2} z2 (z2^2-2r)^{-3/2} dr,
    // which the closed form reproduces after the (z1-z2)^{-2} subtraction.
    Weight w;
    w.atoms.push_back({AtomKind::Geodesic, 1.0, 0.0, 0.02});
    w.atoms.push_back({AtomKind::Cusp, 0.0, 0.0, 0.003});
    MomentDataNum md = moments_numeric(w, 0);
    double z1 = 1.7, z2 = 2.6;
    auto f = [&](double r) {
        return z1 * std::pow(z1 * z1 - 2.0 * r, -1.5) * z2 * std::pow(z2 * z2 - 2.0 * r, -1.5);
    };
    double quad = integrate_adaptive(f, 0.0, md.R, 1e-15);
    double closed = regular_correlator(0, 2, {z1, z2}, w, md);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
}

TEST_CASE("regular W_{1,1} with defects against the defect expansion") {
    // W_{1,1}(z) = sum_p (w^p/p!) Laplace[V_{1,1+p}(L, K..K)](z) for an
    // atomic mu = w delta_K. The series converges geometrically in
    // w / w_crit (~ 0.095 here), so truncating at p = 4 leaves a ~1e-5 tail;
    // the x-shift of the closed form matters at O(w) ~ 3e-3, so the check
    // still resolves it.
    Weight mu;
    mu.atoms.push_back({AtomKind::Geodesic, 1.2, 0.0, 0.003});
    MomentDataNum md = moments_numeric(mu, 48);
    double z = 2.2, wt = 0.003, bK = 1.2 * 1.2;
    double expansion = 0.0, wpow = 1.0;
    for (int p = 0; p <= 4; ++p) {
        // Laplace of the first slot: b1^k -> (2k+1)!/z^{2k+2}; defect slots
        // evaluated at the atom.
        MPoly v = wp_volume(1, 1 + p).poly;
        auto by_k = coefficients_in(v, sym_b(1));
        double lap = 0.0;
        for (const auto& [k, rest] : by_k) {
            auto value_of = [&](Symbol s) -> double {
                if (s.kind == SymKind::Q) return 9.8696044010893586;
                if (s.kind == SymKind::B) return bK;
                throw std::invalid_argument("unexpected symbol");
            };
            lap += eval_double(rest, value_of) * rat_to_double(factorial(2 * k + 1)) /
                   std::pow(z, 2.0 * k + 2.0);
        }
        expansion += wpow / rat_to_double(factorial(p)) * lap;
        wpow *= wt;
    }
    double closed = regular_correlator(1, 1, {z}, mu, md);
    CHECK(std::abs(closed - expansion) / std::abs(closed) <= 1e-4);
}

TEST_CASE("regular correlators at mu = 0 reduce to the bare correlators") {
    Weight none = Weight::zero();
    MomentDataNum md = moments_numeric(none, 8);
    CHECK(md.R == doctest::Approx(0.0).epsilon(1e-14));
    // W_{0,2} vanishes at R = 0.
    CHECK(regular_correlator(0, 2, {2.0, 3.0}, none, md) == doctest::Approx(0.0));
    // W_{1,1}(z) = omega_{1,1}(z) with beta at mu = 0.
    double z = 2.0;
    double expect = (1.0 / 8.0) * std::pow(z, -4.0) +
                    (2.0 * 9.8696044010893586 / 3.0 / 8.0) * std::pow(z, -2.0);
    CHECK(regular_correlator(1, 1, {z}, none, md) == doctest::Approx(expect).epsilon(1e-12));
}
