#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bargain/problem.hpp"
#include "bargain/weights.hpp"

namespace bargain {

enum class Family {
  nash,
  kalai_smorodinsky,
  egalitarian,
  utilitarian,
  maxmin_nash,
  dualself_nash,
  confidence_nash,
};

std::string to_string(Family f);

/// An objective family together with its weight structure.
///
/// Invariants: egalitarian and utilitarian are unnormalized; KS is
/// normalized; confidence collections satisfy max_c min_w log c = 0.
class SolutionSpec {
 public:
  using Weights = std::variant<std::monostate, WeightSet, WeightCollection,
                               ConfidenceCollection>;

  /// Validating constructor; throws InvariantError on a violated invariant.
  static SolutionSpec make(Family family, bool normalized, Weights weights = {});

  static SolutionSpec nash(bool normalized = true);
  static SolutionSpec kalai_smorodinsky();
  static SolutionSpec egalitarian();
  static SolutionSpec utilitarian();
  static SolutionSpec maxmin(WeightSet w, bool normalized = true);
  static SolutionSpec dualself(WeightCollection w, bool normalized = true);
  static SolutionSpec confidence(ConfidenceCollection c, bool normalized = true);

  Family family() const { return family_; }
  bool normalized() const { return normalized_; }
  const Weights& weights() const { return weights_; }
  std::string name() const { return to_string(family_); }

  const WeightSet& weight_set() const { return std::get<WeightSet>(weights_); }
  const WeightCollection& collection() const {
    return std::get<WeightCollection>(weights_);
  }
  const ConfidenceCollection& confidence_collection() const {
    return std::get<ConfidenceCollection>(weights_);
  }

 private:
  SolutionSpec(Family f, bool normalized, Weights w)
      : family_(f), normalized_(normalized), weights_(std::move(w)) {}

  Family family_;
  bool normalized_;
  Weights weights_;
};

/// Active expert (index into the collection) and active weight of the inner
/// minimum. Families without a collection report expert 0.
struct Witness {
  std::size_t expert = 0;
  WeightVector weight;
};

struct Evaluation {
  double value = 0.0;
  Witness witness;
};

struct SolutionResult {
  std::vector<UtilityVector> chosen;
  double value = 0.0;
  /// Parallel to chosen; empty for the counterexample solvers.
  std::vector<Witness> witnesses;
  std::size_t candidate_count = 0;
};

/// x_i / b_i.
UtilityVector normalize(const UtilityVector& x, const IdealPoint& b);

/// Objective values of already-normalized (when spec.normalized) points.
std::vector<Evaluation> evaluate(const SolutionSpec& spec,
                                 std::span<const UtilityVector> points);
Evaluation evaluate(const SolutionSpec& spec, const UtilityVector& x);
double eval_objective(const SolutionSpec& spec, const UtilityVector& x);

/// Argmax of the objective over the given candidates, which must lie in s.
SolutionResult solve(const Problem& s, const SolutionSpec& spec,
                     std::span<const UtilityVector> candidates);
SolutionResult solve(const Problem& s, const SolutionSpec& spec, int resolution);

SolutionResult lexicographic_ks_solve(const Problem& s,
                                      std::span<const UtilityVector> candidates);
SolutionResult lexicographic_ks_solve(const Problem& s, int resolution);
/// Maximizers of player i's utility (0-based).
SolutionResult dictatorship_solve(const Problem& s, std::size_t player,
                                  std::span<const UtilityVector> candidates);
SolutionResult dictatorship_solve(const Problem& s, std::size_t player,
                                  int resolution);
SolutionResult zero_solve(const Problem& s);
SolutionResult weak_pareto_solve(const Problem& s,
                                 std::span<const UtilityVector> candidates);
SolutionResult weak_pareto_solve(const Problem& s, int resolution);

/// A black-box solution evaluated on a problem and an explicit candidate set.
struct Solver {
  std::string name;
  std::function<SolutionResult(const Problem&, std::span<const UtilityVector>)> run;
};

Solver make_solver(const SolutionSpec& spec);
Solver make_solver(const SolutionSpec& spec, std::string name);
Solver zero_solver();
Solver dictatorship_solver(std::size_t player);
Solver lexicographic_ks_solver();
Solver weak_pareto_solver();

}  // namespace bargain
