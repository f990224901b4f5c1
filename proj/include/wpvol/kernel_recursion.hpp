#pragma once

#include "wpvol/volume_poly.hpp"

namespace wpvol {

/// Weight multiplying [x^{2i-2}]-coefficients in the one-boundary term of the
/// tight recursion: the kernel moment of order i against (t +- L_j), after the
/// t-integral and the 1/(2 L_1) prefactor. Even polynomial in b_1 and b_j with
/// reverse-moment coefficients beta_0..beta_i.
///
///   S_i(b_1, b_j) = sum_{m=0}^{i} beta_m sum_{c=0}^{i-m}
///                   C(2(i-m), 2c) / ((2(i-m))! (2c+1)) b_1^c b_j^{i-m-c}
MPoly kernel_single_moment(int i, uint32_t j_boundary, int max_beta);

/// Weight for the double-kernel moment of bi-order (i, j) after the t-integral:
///   D_{i+j}(b_1) = sum_{m=0}^{i+j} beta_m b_1^{i+j-m} / (2 (2(i+j-m)+1)!)
MPoly kernel_double_moment(int i, int j);

/// Tight volume polynomial T_{g,n} in the reverse-moment basis, memoized.
/// Base cases: T_{0,3} = beta_0 and T_{1,1} = beta_1/8 + beta_0 b_1/48;
/// unstable (g, n) throws std::domain_error.
const VolumePoly& tight_volume(int g, int n);

/// Weil-Petersson volume V_{g,n} = T_{g,n} at mu = 0, coefficients in pi^2.
VolumePoly wp_volume(int g, int n);

/// Clears the (g,n) memo table (used by cache determinism tests).
void clear_tight_volume_memo();

}  // namespace wpvol
