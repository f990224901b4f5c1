#pragma once

#include "wpvol/volume_poly.hpp"

namespace wpvol {

/// Half-tight cylinder volume H_p (p >= 1), valid in the region L_1 >= L_2.
/// Slots: b_1 outer boundary, b_2 the tight one, b_3..b_{2+p} defects.
/// Polynomial of degree p-1 with pi^2 coefficients, symmetric in the defects.
/// Memoized; extracted from the V-table by inverting the cylinder
/// decomposition.
const MPoly& half_tight_volume(int p);

/// Per-defect-count tight volume T_{g,n,p}. Slots: b_1..b_n tight
/// boundaries, b_{n+1}..b_{n+p} defects. T_{g,n,0} = V_{g,n};
/// T_{0,1,p} = T_{0,2,p} = 0. Memoized.
const MPoly& tight_volume_defects(int g, int n, int p);

/// Re-glues {T_{g,n,*}, H_*} by the tight decomposition; equals V_{g,n+p}
/// identically (the inversion run forward, used as a consistency check).
MPoly reglue_volume(int g, int n, int p);

/// Cylinder-side re-gluing: H_p plus the split cylinder integrals; equals
/// V_{0,2+p} in the region L_1 >= L_2.
MPoly reglue_cylinder(int p);

void clear_extract_tight_memo();

}  // namespace wpvol
