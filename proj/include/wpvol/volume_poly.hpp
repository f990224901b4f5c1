#pragma once

#include <string>
#include <vector>

#include "wpvol/series.hpp"

namespace wpvol {

/// Coefficient basis a volume polynomial is expressed in:
///  - Beta:    reverse moments beta_0, beta_1, ...
///  - Moments: normalized moments m_k (and powers of invM0)
///  - WP:      rationals in pi^2 only (the mu = 0 specialization)
enum class Basis { Beta, Moments, WP };

std::string basis_name(Basis b);

/// A (g, n)-labelled volume polynomial: even and symmetric in the boundary
/// squares b_1..b_n, with coefficients in the tagged basis.
struct VolumePoly {
    int g = 0;
    int n = 0;
    Basis basis = Basis::Beta;
    MPoly poly;
};

/// Coefficients of eta(u; 0] as a series in u^2: entry p is the coefficient
/// of u^{2p}, equal to that of sin(2*pi*u)/(2*pi*u).
std::vector<MPoly> eta0_coefficients(int max_p);

/// beta_m at mu = 0, i.e. the u^{2m} coefficients of 2*pi*u/sin(2*pi*u),
/// as polynomials in pi^2.
std::vector<MPoly> beta_mu0_table(int max_m);

/// beta_m expressed in normalized moments: invM0 times a polynomial in
/// m_1..m_m (the u^{2m} coefficient of the reciprocal of
/// sum_p m_p u^{2p}/(2p+1)!! with m_0 = 1).
std::vector<MPoly> beta_small_m_table(int max_m);

/// Substitutes m_k -> (-2 pi^2)^k / k! and invM0 -> 1.
MPoly specialize_moments_to_wp(const MPoly& p);

/// Converts between bases (Beta -> Moments, Beta -> WP, Moments -> WP,
/// identity otherwise). Unsupported directions throw.
VolumePoly convert_basis(const VolumePoly& v, Basis target);

/// True if p is invariant under all transpositions of b_1..b_n.
bool symmetric_in_boundaries(const MPoly& p, int n);

/// Verifies sum of b-degrees plus the m-weights (k per m_k) of every monomial
/// equals 3g-3+n; this is the sigma-homogeneity of the moments basis.
bool sigma_homogeneous(const MPoly& p, int expected_degree);

/// Joint coefficient extraction in two symbols.
std::map<std::pair<uint32_t, uint32_t>, MPoly> coefficients_in2(const MPoly& p, Symbol x,
                                                                Symbol y);

/// Relabels boundary slots: slot_map[i] = j renames b_i to b_j (simultaneous).
MPoly relabel_boundaries(const MPoly& p, const std::map<uint32_t, uint32_t>& slot_map);

}  // namespace wpvol
