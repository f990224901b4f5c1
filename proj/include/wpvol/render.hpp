#pragma once

#include <string>

#include "wpvol/volume_poly.hpp"

namespace wpvol {

enum class OutputFormat { Table, Json, Latex, Csv };

OutputFormat parse_format(const std::string& name);

/// LaTeX with b_i printed as L_i^2 and q as \pi^2; term order is the
/// canonical monomial order, leading term first.
std::string mpoly_to_latex(const MPoly& p);

/// Plain-text rendering used by the "table" format.
std::string mpoly_to_table(const MPoly& p);

/// One "monomial,coeff" row per term, with header.
std::string mpoly_to_csv(const MPoly& p);

/// Renders a volume polynomial in the requested format. For the moments
/// basis the invM0 power common to all terms is factored into a prefactor.
std::string render_volume(const VolumePoly& v, OutputFormat f);

}  // namespace wpvol
