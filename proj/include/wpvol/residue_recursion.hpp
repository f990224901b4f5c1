#pragma once

#include <map>
#include <vector>

#include "wpvol/volume_poly.hpp"
#include "wpvol/weight.hpp"

namespace wpvol {

/// Laplace-transformed volume polynomial: coefficient table of
/// prod_i z_i^{-2 k_i - 2}, coefficients in the reverse-moment basis.
struct CorrelatorLaurent {
    int g = 0;
    int n = 0;
    std::map<std::vector<int>, MPoly> terms;

    friend bool operator==(const CorrelatorLaurent& a, const CorrelatorLaurent& b) {
        return a.g == b.g && a.n == b.n && a.terms == b.terms;
    }
};

/// Spectral-curve correlator omega_{g,n} by the residue recursion, memoized.
/// omega_{0,2} = (z_1 - z_2)^{-2} is supplied, not computed; unstable (g,n)
/// throws std::domain_error.
const CorrelatorLaurent& omega(int g, int n);

/// Laplace transform of a volume polynomial: the coefficient of
/// prod z_i^{-2k_i-2} is prod (2k_i+1)! times the coefficient of prod b_i^{k_i}.
CorrelatorLaurent omega_from_T(const VolumePoly& t);

/// Inverse of omega_from_T.
VolumePoly T_from_omega(const CorrelatorLaurent& w);

void clear_omega_memo();

/// Numeric regular-volume correlator W_{g,n}(z) = omega_{g,n}(x) prod z_i/x_i
/// with x_i = sqrt(z_i^2 - 2R); closed forms for (0,1) (quadrature) and (0,2).
/// Requires z_i^2 > 2R, else std::domain_error.
double regular_correlator(int g, int n, const std::vector<double>& zs, const Weight& w,
                          const MomentDataNum& md);

/// Right-hand side of the disk/eta identity:
///   -z sqrt(z^2-2R) eta(sqrt(z^2-2R)) + z sin(2 pi z)/(2 pi) - mu(cosh(L z)).
double disk_function_eta(double z, const Weight& w, const MomentDataNum& md);

}  // namespace wpvol
