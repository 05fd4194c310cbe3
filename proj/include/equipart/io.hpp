#pragma once

#include "equipart/arrangement.hpp"
#include "equipart/measure.hpp"
#include "equipart/solver.hpp"

#include "json.hpp"

#include <string>

namespace equipart {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become InputError("<source>:<line>:<column>: ...").
Json parse_json(const std::string& text, const std::string& source = "<input>");
/// Reads and parses a file; InputError when it cannot be opened.
Json read_json_file(const std::string& path);
/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
Json json_argument(const std::string& arg);

/// Measure schema, by "type":
///   points            {"dim", "points": [[...]], "weights": [...] (optional, default 1)}
///   grid              {"dim", "lower", "upper", "resolution", "density"}
///   curve             {"curve": "gamma4"|"moment", "dim", "interval": [lo, hi], "density": [c0, c1, ...],
///                      "samples"}
///   gaussian_mixture  {"dim", "components": [{"weight", "mean", "cov": [[...]] | "sigma": s}]}
Measure measure_from_json(const Json& j);
/// Inverse of measure_from_json (curves with custom maps cannot be written).
Json measure_to_json(const Measure& m);

/// {"dim", "u": [[...]]} or {"dim", "hyperplanes": [{"a": [...], "c": c}]}.
Configuration config_from_json(const Json& j);
Json config_to_json(const Configuration& c);

/// {"point": [...], "directions": [[...], ...]}.
Subspace subspace_from_json(const Json& j);
Json subspace_to_json(const Subspace& s);

Json report_to_json(const SolveReport& r);
Json cloud_report_to_json(const CloudReport& r);

Vec vec_from_json(const Json& j, const char* what);
Json vec_to_json(const Vec& v);

/// Two-space indented dump; doubles in shortest round-trip form.
std::string dump(const Json& j);

}  // namespace equipart
