#pragma once

#include <string>
#include <vector>

#include "wpvol/volume_poly.hpp"

namespace wpvol {

/// psi-class intersection number <tau_{d_1} ... tau_{d_n}>_g, memoized.
/// Returns 0 whenever the selection rule sum d_i = 3g-3+n fails or (g,n) is
/// unstable; that is the selection rule, not an error.
Rat psi_intersection(int g, std::vector<int> d);

/// All stored intersection-table entries (for JSON export), sorted.
std::vector<std::tuple<int, std::vector<int>, Rat>> intersection_table_entries();

/// The n = 0 seed polynomial in m_1..m_{3g-3}, g >= 2: the generating
/// polynomial of psi-class numbers over partitions with sum (k-1) d_k = 3g-3.
MPoly pg0_polynomial(int g);

/// Normalized volume polynomial P_{g,n}(L, m): memoized recursion in n from
/// the seeds P_{0,3} = 1, P_{1,1} = (-m_1 + b_1/2)/24 and pg0_polynomial.
/// Stored without the M_0 prefactor; see tight_in_moments.
const VolumePoly& normalized_volume(int g, int n);

/// invM0^{2g-2+n} * P_{g,n}: the tight volume in the moments basis.
VolumePoly tight_in_moments(int g, int n);

/// Specializes a moments-basis polynomial at mu = 0 (m_k -> (-2 pi^2)^k / k!,
/// invM0 -> 1).
VolumePoly specialize_wp(const VolumePoly& v);

struct CheckReport {
    bool ok = true;
    std::string detail;
};

/// Verifies the string and dilaton identities for T_{g,n} as exact polynomial
/// identities in the moment symbols. Throws std::domain_error outside the
/// valid range (n >= 4 for g = 0, n >= 2 for g = 1, n >= 1 otherwise).
CheckReport string_dilaton_check(int g, int n);

void clear_n_recursion_memo();

}  // namespace wpvol
