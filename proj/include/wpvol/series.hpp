#pragma once

#include <string>
#include <vector>

#include "wpvol/mpoly.hpp"

namespace wpvol {

/// Truncated power series in one formal variable ("u" or "w") with MPoly
/// coefficients. Index k of coeff is the coefficient of var^k; nothing beyond
/// `order` is ever consulted, and products truncate to the smaller order.
struct TruncSeries {
    std::string var = "u";
    int order = 0;  // coefficients kept for exponents 0..order
    std::vector<MPoly> c;

    TruncSeries() = default;
    TruncSeries(std::string v, int ord) : var(std::move(v)), order(ord), c(ord + 1) {}

    const MPoly& coeff(int k) const;
    void set_coeff(int k, MPoly p);
    bool is_zero() const;

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        if (a.var != b.var || a.order != b.order) return false;
        for (int k = 0; k <= a.order; ++k)
            if (a.coeff(k) != b.coeff(k)) return false;
        return true;
    }
};

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_scale(const TruncSeries& a, const MPoly& f);
TruncSeries series_pow(const TruncSeries& a, uint32_t e);

/// Multiplicative inverse to the common truncation order. The constant term
/// must be invertible: a rational multiple of a (possibly empty) power of M0
/// or invM0. Throws std::domain_error otherwise.
TruncSeries series_recip(const TruncSeries& a);

/// Evaluates sum_k poly_coeffs[k] * s^k, truncated to s.order.
TruncSeries series_eval_poly(const std::vector<MPoly>& poly_coeffs, const TruncSeries& s);

/// Laurent series with finite principal part: coefficients for exponents
/// min_exp .. min_exp + c.size() - 1.
struct LaurentSeries {
    std::string var = "u";
    int min_exp = 0;
    std::vector<MPoly> c;

    bool is_zero() const;
    MPoly coeff(int e) const;
    void add_coeff(int e, const MPoly& p);
    /// Coefficient of var^{-1}.
    MPoly residue() const { return coeff(-1); }
    /// Drops coefficients above `hi` and zero fringes.
    void truncate(int hi);
};

LaurentSeries laurent_add(const LaurentSeries& a, const LaurentSeries& b);
/// Product, keeping exponents <= hi only.
LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b, int hi);
LaurentSeries laurent_scale(const LaurentSeries& a, const MPoly& f);

}  // namespace wpvol
