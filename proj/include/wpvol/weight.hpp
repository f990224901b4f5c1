#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wpvol/series.hpp"

namespace wpvol {

enum class AtomKind { Geodesic, Cone, Cusp };

/// One atom of a defect measure: a geodesic boundary of length L > 0, a sharp
/// cone point of angle in (0, pi), or a cusp. Cone points enter every formula
/// through the squared length L^2 = -alpha^2, so no complex arithmetic occurs.
struct Atom {
    AtomKind kind = AtomKind::Geodesic;
    double length = 0.0;  // geodesic
    double angle = 0.0;   // cone
    double weight = 0.0;

    double b() const;  // signed squared length
};

struct FzztBrane {
    double s0 = 0.0;
    double z = 0.0;
};

/// Defect measure mu: finite atoms plus an optional FZZT family, in numeric
/// mode or formal mode (power series in a global coupling w scaling all
/// atom weights).
struct Weight {
    std::vector<Atom> atoms;
    std::optional<FzztBrane> fzzt;
    bool formal = false;
    int formal_order = 0;

    static Weight zero() { return Weight{}; }
    bool has_fzzt() const { return fzzt.has_value(); }
};

/// Numeric moment data derived from a weight: the root R of Z, the moments
/// M_k = Z^{(k+1)}(R), times t_k, and reverse moments beta_m.
struct MomentDataNum {
    double R = 0.0;
    double z_residual = 0.0;
    int newton_iterations = 0;
    std::vector<double> M;
    std::vector<double> t;
    std::vector<double> beta;
    /// M_k - M_k[0], kept in extended precision: the eta series has huge
    /// alternating terms, and only the mu-dependent part needs summing.
    std::vector<long double> M_delta;

    /// eta(u) = sum_p M_p u^{2p} / (2p+1)!!, evaluated as
    /// sin(2 pi u)/(2 pi u) + sum_p (M_p - M_p[0]) u^{2p}/(2p+1)!!.
    double eta(double u) const;
    /// The mu-dependent part of eta: sum_p (M_p - M_p[0]) u^{2p}/(2p+1)!!.
    double eta_delta(double u) const;
    /// max_p |sum_{m<=p} M_m beta_{p-m}/(2m+1)!! - delta_{p,0}|, normalized
    /// per p by the largest term of the (cancelling) sum.
    double beta_convolution_residual() const;
};

/// Formal moment data: truncated power series in the coupling w with exact
/// coefficients (polynomials in pi^2).
struct MomentDataFormal {
    int order = 0;
    TruncSeries R;
    std::vector<TruncSeries> M;
    std::vector<TruncSeries> t;
    std::vector<TruncSeries> beta;

    /// u^{2p} coefficient of eta(u), itself a series in the coupling.
    TruncSeries eta_coefficient(int p) const {
        return series_scale(M.at(p), MPoly(Rat(1) / double_factorial(2 * p + 1)));
    }
};

/// Z(r; mu] and its r-derivatives, ascending-series evaluation with a
/// switchover to the standard library Bessel functions at large argument.
double z_function(const Weight& w, double r);
double z_derivative(const Weight& w, double r);

/// Newton solve of Z(R) = 0 from r0 = total atom mass, damped when the
/// residual grows. Throws std::runtime_error with the last residual on
/// non-convergence.
double solve_R_numeric(const Weight& w, double tol = 1e-12, int max_iterations = 64,
                       double* residual = nullptr, int* iterations = nullptr);

/// Formal power-series solution R(w) with R = integral(d mu) + O(mu^2).
TruncSeries solve_R_formal(const Weight& w, int order);

MomentDataNum moments_numeric(const Weight& w, int K);
MomentDataFormal moments_formal(const Weight& w, int K);

/// Numeric evaluation of a formal series at coupling value x (pi^2 is the
/// only symbol allowed in the coefficients).
double eval_series_at(const TruncSeries& s, double x);

/// Expands a reverse-moment-basis polynomial as a power series in the
/// coupling by substituting the formal beta series: the w^p coefficient of
/// T_{g,n}(L; w mu].
TruncSeries expand_in_coupling(const MPoly& beta_poly, const std::vector<TruncSeries>& beta_series);

/// Half-tight cylinder generating function, numeric Bessel form; requires
/// L1 >= L2.
double half_tight_cylinder(double L1, double L2, double R);

/// Coefficient of (b_1 - b_2)^l R^{l+1} in the half-tight cylinder series.
Rat half_tight_series_coeff(int l);

/// Free energies: g = 0 by quadrature of Z^2/2 over [0, R]; g = 1 closed
/// form -log(M_0)/24; g >= 2 from the n = 0 seed polynomial.
double free_energy(int g, const Weight& w);

/// phi(k, y) = sum_j y^j / (j! (j+k)!); the entire function behind every
/// Bessel evaluation here (I_k for y > 0, J_k for y < 0).
double phi_entire(int k, double y);

/// Adaptive Simpson quadrature; throws std::runtime_error when the requested
/// tolerance cannot be met within the depth budget.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_depth = 22, double* err_estimate = nullptr);

}  // namespace wpvol
