#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "wpvol/jt.hpp"
#include "wpvol/kernel_recursion.hpp"

using namespace wpvol;

namespace {

constexpr double kPi = 3.14159265358979323846;

Weight defect_weight() {
    // Subcritical: the root R of Z exists only while the total defect mass
    // stays below max_x x J_1(x) / (4 pi^2) ~ 0.0316.
    Weight w;
    w.atoms.push_back({AtomKind::Geodesic, 1.0, 0.0, 0.02});
    return w;
}

}  // namespace

TEST_CASE("gaussian moment map against quadrature") {
    double beta = 0.8;
    for (int k = 0; k <= 6; ++k) {
        auto f = [&](double K) { return std::pow(K, 2 * k + 1) * std::exp(-K * K / (4 * beta)); };
        double cutoff = std::sqrt(4.0 * beta * (60.0 + 10 * k));
        double closed = 0.5 * rat_to_double(factorial(k)) * std::pow(4.0 * beta, k + 1);
        double quad = integrate_adaptive(f, 0.0, cutoff, 1e-12 * closed);
        CHECK(quad == doctest::Approx(closed).epsilon(1e-8));
    }
}

TEST_CASE("gauss_glue: constant polynomial on one slot") {
    NumPoly one{{{0}, 1.0}};
    double beta = 1.7;
    CHECK(gauss_glue(one, {beta}, 0.0) ==
          doctest::Approx(std::sqrt(beta / kPi)).epsilon(1e-14));
}

TEST_CASE("gauss_glue is linear and multiplicative over slots") {
    std::mt19937 rng(31415);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<int> expo(0, 3);
    std::vector<double> betas{0.6, 1.3};
    for (int t = 0; t < 25; ++t) {
        NumPoly a, b;
        for (int i = 0; i < 4; ++i) {
            a[{expo(rng), expo(rng)}] += coeff(rng);
            b[{expo(rng), expo(rng)}] += coeff(rng);
        }
        NumPoly sum = a;
        for (const auto& [k, c] : b) sum[k] += c;
        double lhs = gauss_glue(sum, betas, 0.1);
        double rhs = gauss_glue(a, betas, 0.1) + gauss_glue(b, betas, 0.1);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        // Product of single-slot polynomials factorizes up to the shared
        // trumpet prefactors.
        NumPoly pa{{{expo(rng)}, coeff(rng)}}, pb{{{expo(rng)}, coeff(rng)}};
        NumPoly prod;
        for (const auto& [ka, ca] : pa)
            for (const auto& [kb, cb] : pb) prod[{ka[0], kb[0]}] += ca * cb;
        double joint = gauss_glue(prod, betas, 0.0);
        double split = gauss_glue(pa, {betas[0]}, 0.0) * gauss_glue(pb, {betas[1]}, 0.0);
        CHECK(joint == doctest::Approx(split).epsilon(1e-12));
    }
}

TEST_CASE("Z_{1,1} at mu = 0: closed form") {
    for (double beta : {0.5, 1.0, 2.0}) {
        JTRequest req{1, {beta}, Weight::zero(), 0.0};
        JTResult res = jt_partition(req);
        double expect = std::sqrt(beta) * (beta + kPi * kPi) / (12.0 * std::sqrt(kPi));
        CHECK(res.value == doctest::Approx(expect).epsilon(1e-12));
        CHECK(res.prefactor_exponent == 1);
    }
}

TEST_CASE("Z_{1,1} against quadrature of the gluing integral") {
    for (const Weight& w : {Weight::zero(), defect_weight()}) {
        MomentDataNum md = moments_numeric(w, 1);
        auto value_of = [&](Symbol s) -> double {
            if (s.kind == SymKind::Beta) return md.beta.at(s.index);
            throw std::invalid_argument("unexpected symbol");
        };
        NumPoly t11 = evaluate_coefficients(tight_volume(1, 1).poly, 1, value_of);
        for (double beta : {0.5, 1.0, 2.0}) {
            JTRequest req{1, {beta}, w, 0.0};
            double closed = jt_partition(req).value;
            auto f = [&](double K) {
                double poly = 0.0;
                for (const auto& [ks, c] : t11) poly += c * std::pow(K * K, ks[0]);
                return K * tight_trumpet(beta, K, md.R) * poly;
            };
            double quad = integrate_adaptive(f, 0.0, std::sqrt(4.0 * beta * 80.0),
                                             1e-12 * std::abs(closed));
            CHECK(std::abs(closed - quad) / std::abs(closed) <= 1e-8);
        }
    }
}

TEST_CASE("Z_{0,2} closed form against two glued tight trumpets") {
    for (const Weight& w : {Weight::zero(), defect_weight()}) {
        MomentDataNum md = moments_numeric(w, 0);
        for (auto [b1, b2] : std::vector<std::pair<double, double>>{
                 {0.5, 0.5}, {0.5, 1.0}, {1.0, 2.0}, {2.0, 2.0}}) {
            JTRequest req{0, {b1, b2}, w, 0.0};
            JTResult res = jt_partition(req);
            auto f = [&](double K) {
                return K * tight_trumpet(b1, K, md.R) * tight_trumpet(b2, K, md.R);
            };
            double quad = integrate_adaptive(f, 0.0, std::sqrt(4.0 * std::max(b1, b2) * 70.0),
                                             1e-12 * std::abs(res.value));
            CHECK(std::abs(res.value - quad) / std::abs(res.value) <= 1e-8);
            CHECK(res.prefactor_exponent == 0);
        }
    }
}

TEST_CASE("jt partition is symmetric in the boundary lengths") {
    Weight w = defect_weight();
    JTRequest a{1, {0.7, 1.9}, w, 0.0};
    JTRequest b{1, {1.9, 0.7}, w, 0.0};
    CHECK(jt_partition(a).value == doctest::Approx(jt_partition(b).value).epsilon(1e-12));
}

TEST_CASE("tight trumpet identity: gluing H against the trumpet") {
    // integral K Z^Tr(beta, b)(H(b,K) b + delta(b-K)) db = e^{2 R beta} Z^Tr(beta, K)
    Weight w = defect_weight();
    MomentDataNum md = moments_numeric(w, 0);
    double beta = 1.1, K = 1.4;
    double expect = tight_trumpet(beta, K, md.R);
    auto f = [&](double b) { return b * trumpet(beta, b) * half_tight_cylinder(b, K, md.R); };
    double glued = trumpet(beta, K) + integrate_adaptive(f, K, K + 60.0, 1e-12 * expect);
    CHECK(std::abs(glued - expect) / expect <= 1e-8);
}

TEST_CASE("fzzt pipeline") {
    Weight w;
    w.fzzt = FzztBrane{1.0, 3.0};
    JTRequest req{1, {1.0}, w, 1.0};
    JTResult res = fzzt_partition(req);
    CHECK(std::isfinite(res.value));
    CHECK(res.z_residual <= 1e-12);
    // z -> infinity approaches the mu = 0 result at rate O(1/z).
    double mu0 = jt_partition({1, {1.0}, Weight::zero(), 0.0}).value;
    auto deviation = [&](double z) {
        Weight far;
        far.fzzt = FzztBrane{1.0, z};
        return std::abs(fzzt_partition({1, {1.0}, far, 1.0}).value - mu0) / mu0;
    };
    CHECK(deviation(5e4) <= 1e-3);
    CHECK(deviation(40.0) < deviation(4.0));
    // missing fzzt data is an error
    JTRequest bad{1, {1.0}, Weight::zero(), 0.0};
    CHECK_THROWS_AS(fzzt_partition(bad), std::invalid_argument);
}
