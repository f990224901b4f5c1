#include "wpvol/weight.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wpvol/n_recursion.hpp"

namespace wpvol {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPi2 = kPi * kPi;
// Ascending series are used up to |y| = 225 (Bessel argument 2*sqrt|y| = 30);
// beyond that the alternating sum loses too many digits and we delegate to
// the standard library Bessel functions.
constexpr double kSeriesLimit = 225.0;
}  // namespace

double Atom::b() const {
    switch (kind) {
        case AtomKind::Geodesic: return length * length;
        case AtomKind::Cone: return -angle * angle;
        case AtomKind::Cusp: return 0.0;
    }
    return 0.0;
}

namespace {

long double phi_entire_l(int k, long double y) {
    if (std::abs(static_cast<double>(y)) > kSeriesLimit) {
        double x = 2.0 * std::sqrt(std::abs(static_cast<double>(y)));
        double scale = std::pow(std::abs(static_cast<double>(y)), -0.5 * k);
        return scale * (y > 0 ? std::cyl_bessel_i(k, x) : std::cyl_bessel_j(k, x));
    }
    long double term = 1.0L;
    for (int j = 1; j <= k; ++j) term /= j;  // 1/k!
    long double acc = term;
    for (int j = 1; j < 500; ++j) {
        term *= y / (static_cast<long double>(j) * (j + k));
        acc += term;
        if (std::abs(term) < 1e-22L * std::abs(acc) + 1e-4000L) break;
    }
    return acc;
}

// phi(k, y) - phi(k, 0) = sum_{j>=1} y^j/(j!(j+k)!), the mu-sensitive part.
long double phi_entire_diff_l(int k, long double y) {
    long double term = 1.0L;
    for (int j = 1; j <= k + 1; ++j) term /= j;  // 1/(k+1)!
    term *= y;
    long double acc = term;
    for (int j = 2; j < 500; ++j) {
        term *= y / (static_cast<long double>(j) * (j + k));
        acc += term;
        if (std::abs(term) < 1e-22L * std::abs(acc) + 1e-4000L) break;
    }
    return acc;
}

}  // namespace

double phi_entire(int k, double y) { return static_cast<double>(phi_entire_l(k, y)); }

namespace {

// Z(r) = r phi(1, -2 pi^2 r) - sum_a w_a phi(0, b_a r / 2) + e^{-s0} (z^2-2r)^{-1/2}
double z_atoms_part(const Weight& w, double r) {
    double acc = r * phi_entire(1, -2.0 * kPi2 * r);
    for (const auto& a : w.atoms) acc -= a.weight * phi_entire(0, 0.5 * a.b() * r);
    return acc;
}

double z_fzzt_part(const Weight& w, double r) {
    if (!w.fzzt) return 0.0;
    double d = w.fzzt->z * w.fzzt->z - 2.0 * r;
    if (d <= 0) return std::numeric_limits<double>::quiet_NaN();
    return std::exp(-w.fzzt->s0) / std::sqrt(d);
}

}  // namespace

double z_function(const Weight& w, double r) { return z_atoms_part(w, r) + z_fzzt_part(w, r); }

double z_derivative(const Weight& w, double r) {
    double acc = phi_entire(1, -2.0 * kPi2 * r) - 2.0 * kPi2 * r * phi_entire(2, -2.0 * kPi2 * r);
    for (const auto& a : w.atoms) acc -= a.weight * 0.5 * a.b() * phi_entire(1, 0.5 * a.b() * r);
    if (w.fzzt) {
        double d = w.fzzt->z * w.fzzt->z - 2.0 * r;
        acc += (d > 0) ? std::exp(-w.fzzt->s0) * std::pow(d, -1.5)
                       : std::numeric_limits<double>::quiet_NaN();
    }
    return acc;
}

double solve_R_numeric(const Weight& w, double tol, int max_iterations, double* residual,
                       int* iterations) {
    if (w.formal) throw std::invalid_argument("solve_R_numeric: weight is in formal mode");
    double r = 0.0;
    for (const auto& a : w.atoms) r += a.weight;
    if (w.fzzt) r += -std::exp(-w.fzzt->s0) / w.fzzt->z;
    double fz = z_function(w, r);
    if (!std::isfinite(fz)) {
        r = 0.0;
        fz = z_function(w, r);
    }
    int it = 0;
    for (; it < max_iterations && std::abs(fz) > tol; ++it) {
        double d = z_derivative(w, r);
        if (!std::isfinite(d) || d == 0.0)
            throw std::runtime_error("solve_R_numeric: singular derivative, |Z| = " +
                                     std::to_string(std::abs(fz)));
        double step = fz / d;
        double rn = r - step;
        double fn = z_function(w, rn);
        // Damp while the residual grows or leaves the domain.
        int halvings = 0;
        while ((!std::isfinite(fn) || std::abs(fn) > std::abs(fz)) && halvings < 40) {
            step *= 0.5;
            rn = r - step;
            fn = z_function(w, rn);
            ++halvings;
        }
        r = rn;
        fz = fn;
    }
    if (!(std::abs(fz) <= tol))
        throw std::runtime_error("solve_R_numeric: no convergence, last residual " +
                                 std::to_string(std::abs(fz)));
    if (residual) *residual = std::abs(fz);
    if (iterations) *iterations = it;
    return r;
}

namespace {

// FZZT contribution to M_k: -(integral of d mu_FZZT of (L/sqrt(2R))^{k+1} I_{k+1});
// adaptive quadrature, relative tolerance 1e-10, valid for z > sqrt(2R).
double fzzt_moment(const FzztBrane& f, int k, double R) {
    double root = R > 0 ? std::sqrt(2.0 * R) : 0.0;
    if (f.z <= root) throw std::domain_error("fzzt moments require z > sqrt(2R)");
    double rate = f.z - root;
    double cutoff = (60.0 + 12.0 * k) / rate;
    auto integrand = [&](double L) {
        double b = L * L;
        return std::exp(-f.z * L) * std::pow(0.5 * b, k + 1) * phi_entire(k + 1, 0.5 * b * R);
    };
    // Two passes to honor a relative tolerance of 1e-10.
    double coarse = integrate_adaptive(integrand, 0.0, cutoff, 1e-8);
    double val = integrate_adaptive(integrand, 0.0, cutoff,
                                    1e-10 * std::max(std::abs(coarse), 1e-30));
    return std::exp(-f.s0) * val;  // minus the (negative-weight) integral
}

}  // namespace

double MomentDataNum::eta_delta(double u) const {
    long double acc = 0.0L, upow = 1.0L, dfac = 1.0L;
    for (size_t p = 0; p < M_delta.size(); ++p) {
        if (p > 0) {
            upow *= static_cast<long double>(u) * u;
            dfac *= static_cast<long double>(2 * p + 1);
        }
        acc += M_delta[p] * upow / dfac;
    }
    return static_cast<double>(acc);
}

double MomentDataNum::eta(double u) const {
    double base = u == 0.0 ? 1.0 : std::sin(2.0 * kPi * u) / (2.0 * kPi * u);
    return base + eta_delta(u);
}

double MomentDataNum::beta_convolution_residual() const {
    double worst = 0.0;
    for (size_t p = 0; p < beta.size(); ++p) {
        double s = 0.0, dfac = 1.0, scale = 1.0;
        for (size_t m = 0; m <= p && m < M.size(); ++m) {
            if (m > 0) dfac *= static_cast<double>(2 * m + 1);
            double term = M[m] / dfac * beta[p - m];
            s += term;
            scale = std::max(scale, std::abs(term));
        }
        worst = std::max(worst, std::abs(s - (p == 0 ? 1.0 : 0.0)) / scale);
    }
    return worst;
}

MomentDataNum moments_numeric(const Weight& w, int K) {
    if (w.formal) throw std::invalid_argument("moments_numeric: weight is in formal mode");
    MomentDataNum md;
    md.R = solve_R_numeric(w, 1e-12, 64, &md.z_residual, &md.newton_iterations);
    md.M.resize(K + 1);
    md.t.resize(K + 1);
    md.beta.resize(K + 1);
    md.M_delta.resize(K + 1);
    long double pow_m2pi2 = 1.0L;
    const long double pi2l = static_cast<long double>(kPi) * kPi;
    for (int k = 0; k <= K; ++k) {
        // M_k = (-2 pi^2)^k phi(k, -2 pi^2 R) - sum_a w_a (b/2)^{k+1} phi(k+1, b R/2) - fzzt;
        // the mu = 0 part (-2 pi^2)^k/k! is split off exactly for M_delta.
        long double delta = pow_m2pi2 * phi_entire_diff_l(k, -2.0L * pi2l * md.R);
        long double base = pow_m2pi2;
        for (int j = 1; j <= k; ++j) base /= j;
        for (const auto& a : w.atoms)
            delta -= a.weight *
                     std::pow(0.5L * static_cast<long double>(a.b()), k + 1) *
                     phi_entire_l(k + 1, 0.5L * a.b() * md.R);
        if (w.fzzt) delta += fzzt_moment(*w.fzzt, k, md.R);
        md.M_delta[k] = delta;
        md.M[k] = static_cast<double>(base + delta);
        pow_m2pi2 *= -2.0L * pi2l;

        double tk = 0.0;
        for (const auto& a : w.atoms) tk += a.weight * std::pow(a.b(), k);
        tk *= 2.0 / (std::pow(4.0, k) * rat_to_double(factorial(k)));
        if (w.fzzt)
            tk += -std::exp(-w.fzzt->s0) * 2.0 * rat_to_double(factorial(2 * k)) /
                  (std::pow(4.0, k) * rat_to_double(factorial(k)) *
                   std::pow(w.fzzt->z, 2 * k + 1));
        md.t[k] = tk;
    }
    // Triangular solve of the convolution identity for the reverse moments.
    md.beta[0] = 1.0 / md.M[0];
    for (int p = 1; p <= K; ++p) {
        double s = 0.0, dfac = 1.0;
        for (int m = 1; m <= p; ++m) {
            dfac *= static_cast<double>(2 * m + 1);
            s += md.M[m] / dfac * md.beta[p - m];
        }
        md.beta[p] = -s / md.M[0];
    }
    return md;
}

namespace {

struct ExactAtoms {
    std::vector<std::pair<Rat, Rat>> wb;  // (weight, squared length), exact
};

ExactAtoms exact_atoms(const Weight& w) {
    if (w.fzzt) throw std::invalid_argument("formal mode supports atomic weights only");
    ExactAtoms out;
    for (const auto& a : w.atoms) {
        Rat b;
        switch (a.kind) {
            case AtomKind::Geodesic: b = rat_from_double(a.length) * rat_from_double(a.length); break;
            case AtomKind::Cone: b = -rat_from_double(a.angle) * rat_from_double(a.angle); break;
            case AtomKind::Cusp: b = Rat(0); break;
        }
        out.wb.emplace_back(rat_from_double(a.weight), b);
    }
    return out;
}

// Coefficient of r^j in Z(r; w mu], as a series in the coupling w:
// j = 0: -w mu(1); j >= 1: (-2 pi^2)^{j-1}/( (j-1)! j! ) - w sum_a w_a (b_a/2)^j / (j!)^2.
std::vector<TruncSeries> z_r_coefficients(const ExactAtoms& atoms, int order, int max_r_pow) {
    std::vector<TruncSeries> zr;
    zr.reserve(max_r_pow + 1);
    for (int j = 0; j <= max_r_pow; ++j) {
        TruncSeries s("w", order);
        if (j >= 1) {
            Rat c = rat_pow(Rat(-2), j - 1) / (factorial(j - 1) * factorial(j));
            s.set_coeff(0, MPoly::variable(sym_q(), j - 1).scaled(c));
        }
        Rat mu_j(0);
        for (const auto& [wt, b] : atoms.wb)
            mu_j += wt * rat_pow(b, j) / rat_pow(Rat(2), j);
        if (mu_j != 0) {
            Rat c = -mu_j / (factorial(j) * factorial(j));
            s.set_coeff(1, MPoly(c));
        }
        zr.push_back(std::move(s));
    }
    return zr;
}

TruncSeries eval_r_poly(const std::vector<TruncSeries>& coeffs, const TruncSeries& at) {
    TruncSeries acc("w", at.order);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = series_add(series_mul(acc, at), *it);
    return acc;
}

}  // namespace

TruncSeries solve_R_formal(const Weight& w, int order) {
    auto atoms = exact_atoms(w);
    auto zr = z_r_coefficients(atoms, order, order + 1);
    TruncSeries r("w", order);
    // Fixed point R <- R - Z(R); gains one w-order per sweep.
    for (int sweep = 0; sweep <= order; ++sweep)
        r = series_sub(r, eval_r_poly(zr, r));
    // Z(R) must vanish identically to the truncation order.
    if (!eval_r_poly(zr, r).is_zero())
        throw std::runtime_error("solve_R_formal: fixed point did not close");
    return r;
}

MomentDataFormal moments_formal(const Weight& w, int K) {
    int order = w.formal_order;
    auto atoms = exact_atoms(w);
    MomentDataFormal md;
    md.order = order;
    md.R = solve_R_formal(w, order);
    int max_r_pow = order + K + 2;
    auto zr = z_r_coefficients(atoms, order, max_r_pow);
    md.M.reserve(K + 1);
    for (int k = 0; k <= K; ++k) {
        // Coefficients of r^j in Z^{(k+1)}(r): zr[j+k+1] (j+k+1)!/j!.
        std::vector<TruncSeries> der;
        for (int j = 0; j + k + 1 <= max_r_pow; ++j)
            der.push_back(series_scale(zr[j + k + 1],
                                       MPoly(factorial(j + k + 1) / factorial(j))));
        md.M.push_back(eval_r_poly(der, md.R));
    }
    md.t.reserve(K + 1);
    for (int k = 0; k <= K; ++k) {
        Rat mu_k(0);
        for (const auto& [wt, b] : atoms.wb) mu_k += wt * rat_pow(b, k);
        TruncSeries s("w", order);
        s.set_coeff(1, MPoly(mu_k * Rat(2) / (rat_pow(Rat(4), k) * factorial(k))));
        md.t.push_back(std::move(s));
    }
    md.beta.resize(K + 1);
    md.beta[0] = series_recip(md.M[0]);
    for (int p = 1; p <= K; ++p) {
        TruncSeries s("w", order);
        for (int m = 1; m <= p; ++m)
            s = series_add(s, series_scale(series_mul(md.M[m], md.beta[p - m]),
                                           MPoly(Rat(1) / double_factorial(2 * m + 1))));
        md.beta[p] = series_scale(series_mul(md.beta[0], s), MPoly(Rat(-1)));
    }
    return md;
}

TruncSeries expand_in_coupling(const MPoly& beta_poly,
                               const std::vector<TruncSeries>& beta_series) {
    if (beta_series.empty()) throw std::invalid_argument("expand_in_coupling: no beta series");
    int order = beta_series[0].order;
    TruncSeries out("w", order);
    for (const auto& [mono, c] : beta_poly.terms) {
        TruncSeries term("w", order);
        term.set_coeff(0, MPoly(c));
        Monomial rest;
        for (const auto& [sid, e] : mono) {
            Symbol s = symbol_from_id(sid);
            if (s.kind == SymKind::Beta) {
                if (s.index >= beta_series.size())
                    throw std::invalid_argument("expand_in_coupling: beta table too short");
                for (uint32_t r = 0; r < e; ++r) term = series_mul(term, beta_series[s.index]);
            } else {
                rest.emplace_back(sid, e);
            }
        }
        MPoly bmono;
        bmono.add_term(std::move(rest), Rat(1));
        out = series_add(out, series_scale(term, bmono));
    }
    return out;
}

double eval_series_at(const TruncSeries& s, double x) {
    double acc = 0.0;
    auto value_of = [](Symbol sym) {
        if (sym.kind == SymKind::Q) return kPi2;
        throw std::invalid_argument("eval_series_at: unexpected symbol " + symbol_name(sym));
        return 0.0;
    };
    for (int k = s.order; k >= 0; --k) acc = acc * x + eval_double(s.coeff(k), value_of);
    return acc;
}

double half_tight_cylinder(double L1, double L2, double R) {
    double d = L1 * L1 - L2 * L2;
    if (d < 0) throw std::domain_error("half_tight_cylinder: requires L1 >= L2");
    return R * phi_entire(1, 0.5 * R * d);
}

Rat half_tight_series_coeff(int l) {
    return Rat(1) / (rat_pow(Rat(2), l) * factorial(l) * factorial(l + 1));
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_depth, double* err_estimate) {
    struct Impl {
        const std::function<double(double)>& f;
        double err = 0.0;
        bool ok = true;
        double simpson(double x0, double x2, double f0, double f1, double f2) {
            return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2);
        }
        double go(double x0, double x2, double f0, double f1, double f2, double whole,
                  double tol, int depth) {
            double x1 = 0.5 * (x0 + x2);
            double fl = f(0.5 * (x0 + x1));
            double fr = f(0.5 * (x1 + x2));
            double left = simpson(x0, x1, f0, fl, f1);
            double right = simpson(x1, x2, f1, fr, f2);
            double delta = left + right - whole;
            if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
                if (depth <= 0 && std::abs(delta) > 15.0 * tol) ok = false;
                err += std::abs(delta) / 15.0;
                return left + right + delta / 15.0;
            }
            return go(x0, x1, f0, fl, f1, left, 0.5 * tol, depth - 1) +
                   go(x1, x2, f1, fr, f2, right, 0.5 * tol, depth - 1);
        }
    } impl{f};
    if (a == b) {
        if (err_estimate) *err_estimate = 0.0;
        return 0.0;
    }
    double f0 = f(a), f2 = f(b), f1 = f(0.5 * (a + b));
    double whole = impl.simpson(a, b, f0, f1, f2);
    double out = impl.go(a, b, f0, f1, f2, whole, tol, max_depth);
    if (err_estimate) *err_estimate = impl.err;
    if (!impl.ok)
        throw std::runtime_error("integrate_adaptive: tolerance not met, error estimate " +
                                 std::to_string(impl.err));
    return out;
}

double free_energy(int g, const Weight& w) {
    if (g < 0) throw std::domain_error("free_energy: g >= 0 required");
    if (g == 0) {
        double R = solve_R_numeric(w);
        if (R == 0.0) return 0.0;
        auto f = [&](double r) {
            double z = z_function(w, r);
            return 0.5 * z * z;
        };
        double sign = R > 0 ? 1.0 : -1.0;
        return sign * integrate_adaptive(f, std::min(0.0, R), std::max(0.0, R), 1e-13);
    }
    int K = g == 1 ? 0 : 3 * g - 3;
    MomentDataNum md = moments_numeric(w, K);
    if (g == 1) return -std::log(md.M[0]) / 24.0;
    MPoly seed = pg0_polynomial(g);
    auto value_of = [&](Symbol s) -> double {
        if (s.kind == SymKind::SmallM) return md.M[s.index] / md.M[0];
        throw std::invalid_argument("free_energy: unexpected symbol " + symbol_name(s));
    };
    return std::pow(md.M[0], 2 - 2 * g) * eval_double(seed, value_of);
}

}  // namespace wpvol
