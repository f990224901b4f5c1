#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "wpvol/kernel_recursion.hpp"
#include "wpvol/n_recursion.hpp"
#include "wpvol/residue_recursion.hpp"
#include "wpvol/volume_poly.hpp"
#include "wpvol/weight.hpp"

using namespace wpvol;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Subcritical: Z(r; mu] only has a root while the total defect mass stays
// below max_x x J_1(x)/(4 pi^2) ~ 0.0316; weights are chosen well inside.
Weight standard_weight() {
    Weight w;
    w.atoms.push_back({AtomKind::Geodesic, 1.0, 0.0, 0.015});
    w.atoms.push_back({AtomKind::Cone, 0.0, 2.0, 0.005});
    w.atoms.push_back({AtomKind::Cusp, 0.0, 0.0, 0.001});
    return w;
}

Weight formal_cusp(int order) {
    Weight w;
    w.formal = true;
    w.formal_order = order;
    w.atoms.push_back({AtomKind::Cusp, 0.0, 0.0, 1.0});
    return w;
}

}  // namespace

TEST_CASE("mu = 0: R = 0 and M_k = (-2 pi^2)^k / k!") {
    Weight none = Weight::zero();
    double residual = 0;
    double R = solve_R_numeric(none, 1e-12, 64, &residual);
    CHECK(std::abs(R) <= 1e-14);
    MomentDataNum md = moments_numeric(none, 10);
    double expect = 1.0;
    for (int k = 0; k <= 10; ++k) {
        CHECK(md.M[k] == doctest::Approx(expect).epsilon(1e-13));
        expect *= -2.0 * kPi * kPi / (k + 1);
    }
    CHECK(md.beta_convolution_residual() <= 1e-10);
}

TEST_CASE("newton residual on the standard weight set") {
    for (double scale : {1.0, 0.5, 0.1}) {
        Weight w = standard_weight();
        for (auto& a : w.atoms) a.weight *= scale;
        double residual = 1;
        int iters = 0;
        double R = solve_R_numeric(w, 1e-12, 64, &residual, &iters);
        CHECK(residual <= 1e-12);
        CHECK(R > 0);
        CHECK(iters < 64);
        MomentDataNum md = moments_numeric(w, 10);
        CHECK(md.beta_convolution_residual() <= 1e-10);
    }
}

TEST_CASE("cone atoms keep Z real and shift R in the expected direction") {
    Weight cone;
    cone.atoms.push_back({AtomKind::Cone, 0.0, 1.0, 0.02});
    double R = solve_R_numeric(cone);
    CHECK(std::isfinite(R));
    CHECK(R > 0);
    // J_0-type contribution: same sign structure as a geodesic of zero length.
    Weight cusp;
    cusp.atoms.push_back({AtomKind::Cusp, 0.0, 0.0, 0.02});
    double Rcusp = solve_R_numeric(cusp);
    CHECK(R < Rcusp);  // cone of angle alpha has b < 0, reducing I_0 below 1
}

TEST_CASE("formal R against back-substitution and Newton") {
    Weight w = formal_cusp(10);
    TruncSeries R = solve_R_formal(w, 10);
    // Leading orders: R = w + O(w^2), with exact rational/pi^2 coefficients.
    CHECK(R.coeff(0).is_zero());
    CHECK(R.coeff(1) == MPoly(Rat(1)));
    // Order-10 formal R at w = 1e-2 against Newton. The base measure has
    // mass 0.15, so the coupling sits deep inside the convergence disk
    // (critical coupling ~ 0.0316/0.15 ~ 0.21) and the truncation error is
    // far below the 1e-8 bar.
    Weight base;
    base.formal = true;
    base.formal_order = 10;
    base.atoms.push_back({AtomKind::Geodesic, 1.0, 0.0, 0.1});
    base.atoms.push_back({AtomKind::Cusp, 0.0, 0.0, 0.05});
    TruncSeries R10 = solve_R_formal(base, 10);
    Weight numeric;
    numeric.atoms.push_back({AtomKind::Geodesic, 1.0, 0.0, 0.001});
    numeric.atoms.push_back({AtomKind::Cusp, 0.0, 0.0, 0.0005});
    double newton = solve_R_numeric(numeric);
    double formal = eval_series_at(R10, 0.01);
    CHECK(std::abs(newton - formal) / std::abs(newton) <= 1e-8);
}

TEST_CASE("formal moments satisfy the convolution identity exactly") {
    Weight w;
    w.formal = true;
    w.formal_order = 4;
    w.atoms.push_back({AtomKind::Geodesic, 1.5, 0.0, 1.0});
    MomentDataFormal md = moments_formal(w, 6);
    for (int p = 0; p <= 6; ++p) {
        TruncSeries acc("w", md.order);
        for (int m = 0; m <= p; ++m)
            acc = series_add(acc, series_scale(series_mul(md.M[m], md.beta[p - m]),
                                               MPoly(Rat(1) / double_factorial(2 * m + 1))));
        for (int k = 0; k <= md.order; ++k) {
            MPoly expect = (p == 0 && k == 0) ? MPoly(Rat(1)) : MPoly();
            CHECK(acc.coeff(k) == expect);
        }
    }
}

TEST_CASE("formal moments at zero coupling match mu = 0") {
    Weight w = formal_cusp(3);
    MomentDataFormal md = moments_formal(w, 4);
    for (int k = 0; k <= 4; ++k) {
        Rat c = rat_pow(Rat(-2), k) / factorial(k);
        CHECK(md.M[k].coeff(0) == MPoly::variable(sym_q(), k).scaled(c));
    }
    // eta(u;0] coefficients from the formal M's equal the sin-series ones.
    auto expect = eta0_coefficients(4);
    for (int p = 0; p <= 4; ++p) CHECK(md.eta_coefficient(p).coeff(0) == expect[p]);
}

TEST_CASE("half-tight cylinder series and numeric form") {
    CHECK(half_tight_series_coeff(0) == 1);
    CHECK(half_tight_series_coeff(1) == rat(1, 4));
    CHECK(half_tight_series_coeff(2) == rat(1, 48));
    double R = 0.37;
    // L1 = L2: only the first term survives.
    CHECK(half_tight_cylinder(2.0, 2.0, R) == doctest::Approx(R).epsilon(1e-14));
    // Series vs Bessel form at moderate separation.
    double L1 = 2.0, L2 = 1.0;
    double d = L1 * L1 - L2 * L2;
    double series = 0;
    for (int l = 0; l < 30; ++l)
        series += rat_to_double(half_tight_series_coeff(l)) * std::pow(R, l + 1) * std::pow(d, l);
    CHECK(half_tight_cylinder(L1, L2, R) == doctest::Approx(series).epsilon(1e-13));
    CHECK_THROWS_AS(half_tight_cylinder(1.0, 2.0, R), std::domain_error);
}

TEST_CASE("free energies") {
    Weight none = Weight::zero();
    CHECK(free_energy(0, none) == doctest::Approx(0.0));
    CHECK(free_energy(1, none) == doctest::Approx(0.0));
    // F_2[0] equals the wp specialization of the genus-2 seed at q = pi^2.
    VolumePoly p20{2, 0, Basis::Moments, pg0_polynomial(2)};
    MPoly wp = specialize_moments_to_wp(p20.poly);
    auto value_of = [&](Symbol s) -> double {
        if (s.kind == SymKind::Q) return kPi * kPi;
        throw std::invalid_argument("unexpected");
    };
    CHECK(free_energy(2, none) == doctest::Approx(eval_double(wp, value_of)).epsilon(1e-12));
    // With a defect gas the free energies stay finite and respond to mu.
    Weight w = standard_weight();
    CHECK(std::isfinite(free_energy(0, w)));
    CHECK(std::isfinite(free_energy(1, w)));
    CHECK(std::isfinite(free_energy(2, w)));
    CHECK(free_energy(0, w) > 0);
}

TEST_CASE("free energies against the defect expansion") {
    // F_g[w delta_K] = sum_p w^p/p! V_{g,p}(K,..,K), with V_{0,0..2} and
    // V_{1,0} absent. The series converges geometrically in w/w_crit
    // (~0.06 here), so low truncations already pin several digits.
    double wt = 0.002, bK = 1.21;  // geodesic atom, L = 1.1
    Weight mu;
    mu.atoms.push_back({AtomKind::Geodesic, 1.1, 0.0, wt});
    auto v_at = [&](int g, int n) {
        auto value_of = [&](Symbol s) -> double {
            if (s.kind == SymKind::Q) return kPi * kPi;
            if (s.kind == SymKind::B) return bK;
            throw std::invalid_argument("unexpected symbol");
        };
        return eval_double(wp_volume(g, n).poly, value_of);
    };
    double f0 = free_energy(0, mu);
    double f0_series = std::pow(wt, 3) / 6.0 * v_at(0, 3) +
                       std::pow(wt, 4) / 24.0 * v_at(0, 4) +
                       std::pow(wt, 5) / 120.0 * v_at(0, 5);
    CHECK(std::abs(f0 - f0_series) / f0 <= 1e-3);

    double f1 = free_energy(1, mu);
    double f1_series = wt * v_at(1, 1) + std::pow(wt, 2) / 2.0 * v_at(1, 2) +
                       std::pow(wt, 3) / 6.0 * v_at(1, 3);
    CHECK(std::abs(f1 - f1_series) / std::abs(f1) <= 1e-4);

    double f2 = free_energy(2, mu);
    double f2_0 = free_energy(2, Weight::zero());
    double f2_series = f2_0 + wt * v_at(2, 1) + std::pow(wt, 2) / 2.0 * v_at(2, 2) +
                       std::pow(wt, 3) / 6.0 * v_at(2, 3) +
                       std::pow(wt, 4) / 24.0 * v_at(2, 4);
    CHECK(std::abs(f2 - f2_series) / std::abs(f2) <= 5e-5);
}

TEST_CASE("disk function identity (quadrature vs eta expression)") {
    Weight w = standard_weight();
    MomentDataNum md = moments_numeric(w, 48);
    for (double z : {2.0, 3.0}) {
        REQUIRE(4.0 * std::abs(md.R) < z * z);
        double via_quadrature = regular_correlator(0, 1, {z}, w, md);
        double via_eta = disk_function_eta(z, w, md);
        CHECK(std::abs(via_quadrature - via_eta) /
                  std::max(std::abs(via_eta), 1e-30) <=
              1e-6);
    }
}

TEST_CASE("fzzt weights: moments vanish as z grows") {
    Weight w;
    w.fzzt = FzztBrane{0.0, 4.0};
    MomentDataNum md4 = moments_numeric(w, 2);
    w.fzzt = FzztBrane{0.0, 40.0};
    MomentDataNum md40 = moments_numeric(w, 2);
    CHECK(std::abs(md40.R) < std::abs(md4.R));
    // s0 -> infinity kills the weight entirely.
    w.fzzt = FzztBrane{30.0, 4.0};
    MomentDataNum far = moments_numeric(w, 2);
    CHECK(std::abs(far.R) <= 1e-10);
    CHECK(far.M[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(far.z_residual <= 1e-12);
}
