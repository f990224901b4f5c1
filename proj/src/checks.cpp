#include "wpvol/checks.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "wpvol/extract_tight.hpp"
#include "wpvol/jt.hpp"
#include "wpvol/kernel_recursion.hpp"
#include "wpvol/n_recursion.hpp"
#include "wpvol/residue_recursion.hpp"

namespace wpvol {

void CheckSuiteResult::add(const std::string& name, bool ok, const std::string& detail) {
    items.push_back({name, ok, detail});
    pass = pass && ok;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::pair<int, int>> cells_up_to(int max_complexity, bool corollary_range) {
    std::vector<std::pair<int, int>> cells;
    for (int g = 0; 2 * g - 2 + 1 <= max_complexity; ++g)
        for (int n = 1; 2 * g - 2 + n <= max_complexity; ++n) {
            if (2 * g - 2 + n <= 0) continue;
            if (corollary_range) {
                if (g == 0 && n < 4) continue;
                if (g == 1 && n < 2) continue;
            } else if (g == 0 && n < 3) {
                continue;
            }
            cells.emplace_back(g, n);
        }
    return cells;
}

MPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(0, 5), expo(0, 3), numer(-9, 9);
    std::uniform_int_distribution<int> denom(1, 9), which(0, 3);
    std::vector<Symbol> vars{sym_q(), sym_b(1), sym_b(2), sym_m(1)};
    MPoly p;
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        Monomial mono;
        for (const auto& v : vars) {
            int e = expo(rng);
            if (which(rng) == 0 && e > 0) mono.emplace_back(v.id(), e);
        }
        p.add_term(std::move(mono), rat(numer(rng), denom(rng)));
    }
    return p;
}

void run_ring(CheckSuiteResult& out) {
    std::mt19937 rng(20240915);
    bool assoc = true, distrib = true, commut = true, cancel = true;
    for (int t = 0; t < 1000; ++t) {
        MPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        if ((a * b) * c != a * (b * c)) assoc = false;
        if (a * (b + c) != a * b + a * c) distrib = false;
        if (a * b != b * a || a + b != b + a) commut = false;
        if (!(a - a).is_zero() || !(a - a).terms.empty()) cancel = false;
    }
    out.add("ring.mul_associative", assoc);
    out.add("ring.mul_distributive", distrib);
    out.add("ring.commutative", commut);
    out.add("ring.cancellation_structural", cancel);

    // series_recip(a) * a = 1 + O(u^{N+1}) on random invertible series.
    bool recip_ok = true;
    std::uniform_int_distribution<int> numer(-9, 9), denom(1, 9);
    for (int t = 0; t < 50; ++t) {
        TruncSeries s("u", 8);
        s.set_coeff(0, MPoly(rat(denom(rng), 1)));
        for (int k = 1; k <= 8; ++k) {
            MPoly coeff = MPoly::variable(sym_q(), k % 3).scaled(rat(numer(rng), denom(rng)));
            s.set_coeff(k, coeff);
        }
        TruncSeries prod = series_mul(series_recip(s), s);
        for (int k = 0; k <= 8; ++k) {
            MPoly expect = k == 0 ? MPoly(Rat(1)) : MPoly();
            if (prod.coeff(k) != expect) recip_ok = false;
        }
    }
    out.add("ring.series_recip_identity", recip_ok);

    // integrate then differentiate returns the integrand on random even polys.
    bool int_ok = true;
    for (int t = 0; t < 200; ++t) {
        MPoly p = random_poly(rng);
        if (differentiate_even(integrate_even(p, 1), 1) != p) int_ok = false;
    }
    out.add("ring.integrate_differentiate_roundtrip", int_ok);

    // Laurent residue conventions.
    LaurentSeries l;
    l.add_coeff(-2, MPoly(Rat(5)));
    l.add_coeff(-1, MPoly(Rat(7)));
    l.add_coeff(0, MPoly(Rat(9)));
    out.add("ring.laurent_residue", l.residue() == MPoly(Rat(7)));
}

std::string cell_name(int g, int n) {
    return "(" + std::to_string(g) + "," + std::to_string(n) + ")";
}

void run_paths(CheckSuiteResult& out, int max_complexity) {
    for (auto [g, n] : cells_up_to(max_complexity, false)) {
        const VolumePoly& kernel = tight_volume(g, n);
        VolumePoly residue = T_from_omega(omega(g, n));
        bool beta_equal = kernel.poly == residue.poly;
        out.add("paths.kernel_vs_residue" + cell_name(g, n), beta_equal);
        VolumePoly kernel_m = convert_basis(kernel, Basis::Moments);
        bool m_equal = kernel_m.poly == tight_in_moments(g, n).poly;
        out.add("paths.kernel_vs_nrec" + cell_name(g, n), m_equal);
        // mu = 0 collapse: all three give the same V_{g,n}.
        VolumePoly wp_k = convert_basis(kernel, Basis::WP);
        VolumePoly wp_r = convert_basis(residue, Basis::WP);
        VolumePoly wp_n = specialize_wp(tight_in_moments(g, n));
        bool wp_equal = wp_k.poly == wp_r.poly && wp_k.poly == wp_n.poly;
        out.add("paths.mu0_collapse" + cell_name(g, n), wp_equal);
    }
}

void run_string_dilaton(CheckSuiteResult& out, int max_complexity) {
    for (auto [g, n] : cells_up_to(max_complexity, true)) {
        CheckReport rep = string_dilaton_check(g, n);
        out.add("string_dilaton" + cell_name(g, n), rep.ok, rep.detail);
    }
}

void run_decomposition(CheckSuiteResult& out) {
    out.add("decomposition.H1_is_one", half_tight_volume(1) == MPoly(Rat(1)));
    bool series_ok = half_tight_series_coeff(0) == Rat(1) &&
                     half_tight_series_coeff(1) == rat(1, 4) &&
                     half_tight_series_coeff(2) == rat(1, 48);
    out.add("decomposition.H_series_leading_terms", series_ok);
    const std::vector<std::tuple<int, int, int>> cells{
        {0, 3, 1}, {0, 3, 2}, {0, 4, 1}, {1, 1, 1}, {1, 1, 2}};
    for (auto [g, n, p] : cells) {
        bool ok = reglue_volume(g, n, p) == wp_volume(g, n + p).poly;
        out.add("decomposition.reglue(" + std::to_string(g) + "," + std::to_string(n) + "," +
                    std::to_string(p) + ")",
                ok);
    }
    for (int p = 2; p <= 3; ++p) {
        bool ok = reglue_cylinder(p) == wp_volume(0, 2 + p).poly;
        out.add("decomposition.cylinder_reglue(p=" + std::to_string(p) + ")", ok);
    }
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

double rel_err(double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

Weight sample_defect_weight() {
    // Subcritical: the root of Z exists only below total mass
    // max_x x J_1(x)/(4 pi^2) ~ 0.0316.
    Weight w;
    w.atoms.push_back({AtomKind::Geodesic, 1.0, 0.0, 0.02});
    return w;
}

void run_jt(CheckSuiteResult& out) {
    // (0,2): closed form against direct quadrature of two tight trumpets.
    for (const Weight& w : {Weight::zero(), sample_defect_weight()}) {
        MomentDataNum md = moments_numeric(w, 0);
        const std::vector<std::pair<double, double>> pairs{{0.5, 1.0}, {0.5, 2.0}, {1.0, 2.0}};
        for (auto [b1, b2] : pairs) {
            JTRequest req{0, {b1, b2}, w, 0.0};
            double closed = jt_partition(req).value;
            double cutoff = std::sqrt(4.0 * std::max(b1, b2) * 60.0);
            auto f = [&](double K) {
                return K * tight_trumpet(b1, K, md.R) * tight_trumpet(b2, K, md.R);
            };
            double quad = integrate_adaptive(f, 0.0, cutoff, 1e-12 * std::abs(closed));
            std::ostringstream name;
            name << "jt.Z02_quadrature(b1=" << b1 << ",b2=" << b2 << ","
                 << (w.atoms.empty() ? "mu=0" : "defect") << ")";
            out.add(name.str(), rel_err(closed, quad) <= 1e-8,
                    "rel err " + sci(rel_err(closed, quad)));
        }
    }
    // (1,1): Gaussian moment map against quadrature of the gluing integral.
    for (const Weight& w : {Weight::zero(), sample_defect_weight()}) {
        MomentDataNum md = moments_numeric(w, 1);
        auto value_of = [&](Symbol s) -> double {
            if (s.kind == SymKind::Beta) return md.beta.at(s.index);
            throw std::invalid_argument("unexpected symbol");
        };
        NumPoly t11 = evaluate_coefficients(tight_volume(1, 1).poly, 1, value_of);
        for (double beta : {0.5, 1.0, 2.0}) {
            JTRequest req{1, {beta}, w, 0.0};
            double closed = jt_partition(req).value;
            auto poly_at = [&](double K) {
                double acc = 0.0;
                for (const auto& [ks, c] : t11) acc += c * std::pow(K * K, ks[0]);
                return acc;
            };
            double cutoff = std::sqrt(4.0 * beta * 80.0);
            auto f = [&](double K) { return K * tight_trumpet(beta, K, md.R) * poly_at(K); };
            double quad = integrate_adaptive(f, 0.0, cutoff, 1e-12 * std::abs(closed));
            std::ostringstream name;
            name << "jt.Z11_quadrature(beta=" << beta << ","
                 << (w.atoms.empty() ? "mu=0" : "defect") << ")";
            out.add(name.str(), rel_err(closed, quad) <= 1e-8,
                    "rel err " + sci(rel_err(closed, quad)));
        }
    }
    // mu = 0 golden value: Z_{1,1}(beta) = sqrt(beta) (beta + pi^2) / (12 sqrt(pi)).
    {
        JTRequest req{1, {1.0}, Weight::zero(), 0.0};
        double expect = (1.0 + kPi * kPi) / (12.0 * std::sqrt(kPi));
        out.add("jt.Z11_mu0_closed_form", rel_err(jt_partition(req).value, expect) <= 1e-12);
    }
}

}  // namespace

CheckSuiteResult run_check_suite(const std::string& suite, int max_complexity) {
    CheckSuiteResult out;
    out.suite = suite;
    if (suite == "ring")
        run_ring(out);
    else if (suite == "paths")
        run_paths(out, max_complexity);
    else if (suite == "string-dilaton")
        run_string_dilaton(out, max_complexity);
    else if (suite == "decomposition")
        run_decomposition(out);
    else if (suite == "jt")
        run_jt(out);
    else
        throw std::invalid_argument("unknown check suite: " + suite);
    return out;
}

std::vector<CheckSuiteResult> run_all_checks(int max_complexity) {
    std::vector<CheckSuiteResult> out;
    for (const char* s : {"ring", "paths", "string-dilaton", "decomposition", "jt"})
        out.push_back(run_check_suite(s, max_complexity));
    return out;
}

nlohmann::json check_results_to_json(const std::vector<CheckSuiteResult>& results) {
    nlohmann::json suites = nlohmann::json::array();
    bool pass = true;
    for (const auto& r : results) {
        nlohmann::json items = nlohmann::json::array();
        for (const auto& item : r.items) {
            nlohmann::json ij{{"name", item.name}, {"pass", item.pass}};
            if (!item.detail.empty()) ij["detail"] = item.detail;
            items.push_back(ij);
        }
        suites.push_back(nlohmann::json{{"suite", r.suite}, {"pass", r.pass}, {"checks", items}});
        pass = pass && r.pass;
    }
    return nlohmann::json{{"pass", pass}, {"suites", suites}};
}

}  // namespace wpvol
