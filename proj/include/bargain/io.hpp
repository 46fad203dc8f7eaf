#pragma once

// JSON encodings of problems, weight structures, specs and results.
//
//   problem     {"n": int, "generators": [[x, ...], ...]}
//   weight set  {"type": "weight_set", "vertices": [[w, ...], ...]}
//   collection  {"type": "collection", "sets": [[[w, ...], ...], ...], "symmetrize": bool}
//   confidence  {"type": "confidence", "functions": [{"support": [[w, ...], ...],
//                "pieces": [{"a": [...], "beta": f}, ...]}, ...],
//                "symmetrize": bool, "normalize": bool}
//   spec        {"family": str, "normalized": bool, "weights": <weight payload>}
//
// Structural problems (bad JSON, wrong types, missing keys, dimension
// mismatches) raise InputError; domain violations raise InvariantError.

#include <filesystem>
#include <string>

#include "bargain/problem.hpp"
#include "bargain/solutions.hpp"
#include "bargain/weights.hpp"
#include "json.hpp"

namespace bargain::io {

using nlohmann::json;

json load_file(const std::filesystem::path& path);
json parse(const std::string& text);

json to_json(const UtilityVector& x);
json to_json(std::span<const UtilityVector> points);
json to_json(const Problem& s);
json to_json(const WeightVector& w);
json to_json(const WeightSet& w);
json to_json(const WeightCollection& c);
json to_json(const ConfidenceCollection& c);
json to_json(const SolutionSpec& spec);
json to_json(const SolutionResult& r);

UtilityVector utility_from_json(const json& j);
std::vector<UtilityVector> points_from_json(const json& j);
Problem problem_from_json(const json& j);
WeightVector weight_from_json(const json& j);
SolutionSpec::Weights weights_from_json(const json& j);
SolutionSpec spec_from_json(const json& j);

/// Specs plus the counterexample families "zero", "dictatorship" (with
/// "player", 1-based), "lexicographic_ks" and "weak_pareto".
Solver solver_from_json(const json& j);

}  // namespace bargain::io
