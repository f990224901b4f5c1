#pragma once

#include <string>

#include "json.hpp"
#include "wpvol/residue_recursion.hpp"
#include "wpvol/volume_poly.hpp"
#include "wpvol/weight.hpp"

namespace wpvol {

/// Canonical JSON of an MPoly: a list of {"exponents": {name: e}, "coeff":
/// "num/den"} in the canonical monomial order. Deterministic byte-for-byte.
nlohmann::json mpoly_to_json(const MPoly& p);
MPoly mpoly_from_json(const nlohmann::json& j);

nlohmann::json volume_poly_to_json(const VolumePoly& v);
VolumePoly volume_poly_from_json(const nlohmann::json& j);

nlohmann::json correlator_to_json(const CorrelatorLaurent& w);
CorrelatorLaurent correlator_from_json(const nlohmann::json& j);

nlohmann::json intersection_table_to_json();

/// Error carrying a JSON-pointer-style location for weight-file diagnostics.
struct WeightParseError : std::runtime_error {
    std::string pointer;
    WeightParseError(std::string ptr, const std::string& message)
        : std::runtime_error(message + " (at " + ptr + ")"), pointer(std::move(ptr)) {}
};

/// Weight file schema:
///   {"atoms":[{"kind":"geodesic"|"cone"|"cusp","length":x|null,"angle":x|null,
///     "weight":x}], "fzzt":{"s0":x,"z":x}|null, "mode":"numeric"|{"formal":N}}
Weight weight_from_json(const nlohmann::json& j);
nlohmann::json weight_to_json(const Weight& w);

}  // namespace wpvol
