#pragma once

// Independent cross-checks of the solution module.
//
// brute_force_solve evaluates objectives by direct formula over its own
// frontier grid, with inner minima taken by scanning a barycentric grid of
// the weight polytope's vertices (no LP, no SIMD kernels). The remaining
// functions test the representation V(x) = inf{alpha : alpha 1 chosen in
// scmp{x, alpha 1}} and the structural properties of I(y) = log V(e^y).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bargain/problem.hpp"
#include "bargain/solutions.hpp"
#include "json.hpp"

namespace bargain {

struct OracleConfig {
  int problem_resolution = 64;  // frontier grid steps per generator edge
  int simplex_resolution = 16;  // barycentric steps over weight-set vertices
  double eps_bis = 1e-6;
  std::uint64_t seed = 42;

  /// Throws InputError unless resolutions >= 1 and 0 < eps_bis <= 1e-6.
  void validate() const;
};

/// The objective of spec at x (already normalized when spec.normalized())
/// computed by direct formula; agrees with eval_objective.
double oracle_objective(const SolutionSpec& spec, const UtilityVector& x,
                        int simplex_resolution);

/// Frontier points of S on the grid {k g_j / r} of each generator g's box
/// faces. Grids are nested when r doubles.
std::vector<UtilityVector> oracle_frontier(const Problem& s, int resolution);

/// Argmax of oracle_objective over oracle_frontier, with ties. Witnesses
/// are left empty.
SolutionResult brute_force_solve(const Problem& s, const SolutionSpec& spec,
                                 const OracleConfig& config = {});

/// The degree-1 homogeneous representative: eval_objective, except that
/// the Nash product is replaced by the geometric mean.
double degree_one_objective(const SolutionSpec& spec, const UtilityVector& x);

struct BisectionStep {
  double alpha;
  bool member;  // alpha 1 is chosen in scmp{x, alpha 1}
};

struct VDefinition {
  double value = 0.0;
  bool bracket_ok = true;    // alpha = 1 is a member and alpha = eps_bis is not
  bool monotone_ok = true;   // spot checks above and below the result agree
  std::vector<BisectionStep> trace;
};

/// Bisection on (eps_bis, 1] for the smallest alpha with alpha 1 chosen in
/// scmp{x, alpha 1}. Candidates are that problem's generators plus alpha 1;
/// a monotone objective attains its maximum over a union of boxes at a
/// box corner, so no other point can exclude alpha 1. x must lie in (0, 1]^n.
VDefinition v_from_definition(const SolutionSpec& spec, const UtilityVector& x,
                              const OracleConfig& config = {});

/// log degree_one_objective(spec, exp(y)) for y <= 0.
double i_transform(const SolutionSpec& spec, std::span<const double> y);

struct ClaimReport {
  std::string claim;
  std::string solution;
  std::size_t samples = 0;
  double worst_residual = 0.0;  // max |residual|, or min residual for concavity
  double tolerance = 1e-9;
  bool holds = true;
  nlohmann::json worst_case;   // the sample attaining worst_residual
};

nlohmann::json to_json(const ClaimReport& r);

// Claims are sampled in dimension n, which must match the spec's weights.

/// |I(y + a 1) - I(y) - a| over y in [-3, 0]^n, a in [-3, 0].
ClaimReport check_translation_invariance(const SolutionSpec& spec, std::size_t n,
                                         std::size_t samples, std::uint64_t seed = 42);
/// |I(a y) - a I(y)| over y in [-3, 0]^n, a in {0.5, 2, 3}.
ClaimReport check_i_homogeneity(const SolutionSpec& spec, std::size_t n,
                                std::size_t samples, std::uint64_t seed = 42);
/// I(l y + (1 - l) y') - l I(y) - (1 - l) I(y') >= -tol over l in
/// {0.25, 0.5, 0.75}. Every third sample first shifts the higher of y, y'
/// down so that I(y) = I(y') and uses l = 0.5.
ClaimReport check_i_concavity(const SolutionSpec& spec, std::size_t n,
                              std::size_t samples, std::uint64_t seed = 42);

struct CrossCheck {
  bool agree = true;
  double solve_value = 0.0;
  double oracle_value = 0.0;
  double gap = 0.0;    // in log units for product families
  double bound = 0.0;  // 2 L / resolution
  std::vector<UtilityVector> solve_chosen;
  std::vector<UtilityVector> oracle_chosen;
};

nlohmann::json to_json(const CrossCheck& c);

/// Compares solve(S, spec, r) with brute_force_solve at the same problem
/// resolution r. L bounds the objective's sensitivity to a step of b_j / r
/// in each coordinate, evaluated at the chosen points.
CrossCheck cross_check(const Problem& s, const SolutionSpec& spec,
                       const OracleConfig& config = {});

}  // namespace bargain
