#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "eigensel/mep.hpp"
#include "eigensel/problems.hpp"
#include "eigensel/selection.hpp"

namespace eigensel {

using Json = nlohmann::json;

Json to_json(Complex z);
Complex complex_from_json(const Json& j);
Json to_json(const CVector& v);
CVector vector_from_json(const Json& j);

/// Eigenvalue as [re, im], or {"inf": true} at infinity.
Json eigenvalue_json(const EigenTriplet& t);

Json to_json(const EigenTriplet& t);
EigenTriplet triplet_from_json(const Json& j);
Json to_json(const MepTriplet& t);
MepTriplet mep_triplet_from_json(const Json& j);

/// A problem on disk: a JSON manifest next to one Matrix Market file per
/// coefficient. Polynomial problems list A_0..A_m; multiparameter problems
/// list [A_i, C_i0, ..., C_i(k-1)] per equation.
using Problem = std::variant<PolyProblem, LinearMep>;

/// Writes <dir>/problem.json and the matrices; returns the manifest path.
std::filesystem::path save_problem(const std::filesystem::path& dir, const Problem& problem,
                                   const Json& generator);
Problem load_problem(const std::filesystem::path& manifest);
/// The "generator" entry of a manifest (null when absent).
Json load_generator(const std::filesystem::path& manifest);

void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);

}  // namespace eigensel
