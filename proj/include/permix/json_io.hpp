#pragma once

#include <Eigen/Dense>
#include <complex>
#include <json.hpp>
#include <string>

#include "permix/capacity.hpp"
#include "permix/component_list.hpp"
#include "permix/series.hpp"

namespace permix {

// Reports use insertion order and shortest round-trip float formatting, so a
// fixed seed reproduces byte-identical output.
using Json = nlohmann::ordered_json;

/// Doubles enter reports through this shim: infinities map to the "inf" /
/// "-inf" string sentinels (bare JSON has no infinity).
Json num_or_inf(double v);
double parse_num_or_inf(const Json& j);

/// {"alphabet_size": K, "components": [[...], ...]}; invariants validated.
ComponentList parse_component_list(const Json& j);
Json component_list_to_json(const ComponentList& c);

/// {"variant": "explicit"|"gaussian"|"bernoulli"|"poisson", ...params}
FamilySpec parse_family_spec(const Json& j);
Json family_spec_to_json(const FamilySpec& spec);

/// {"n": n, "rows": [[...]], "complex": bool, "imag_rows": [[...]]}
Eigen::MatrixXcd parse_matrix(const Json& j, bool* is_complex = nullptr);
Json matrix_to_json(const Eigen::MatrixXd& m);

/// {"s": [...], "r": [...], "t": [...], "chi2": v}
Json series_to_json(const SeriesDecomposition& sd);

Json load_json_file(const std::string& path);

}  // namespace permix
