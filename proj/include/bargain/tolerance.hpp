#pragma once

#include <algorithm>
#include <cmath>

namespace bargain {

// Relative tolerance for dominance ties and equal-ideal membership.
inline constexpr double kEqTol = 1e-9;
// Relative tolerance for argmax ties.
inline constexpr double kTieTol = 1e-9;
// Simplex membership of weight vectors.
inline constexpr double kSimplexTol = 1e-12;

inline double rel_slack(double a, double b, double tol = kEqTol) {
  return tol * std::max(std::fabs(a), std::fabs(b));
}

inline bool approx_ge(double a, double b, double tol = kEqTol) {
  return a >= b - rel_slack(a, b, tol);
}

inline bool approx_eq(double a, double b, double tol = kEqTol) {
  return std::fabs(a - b) <= rel_slack(a, b, tol);
}

/// a exceeds b by more than the relative slack.
inline bool clearly_gt(double a, double b, double tol = kEqTol) {
  return a - b > rel_slack(a, b, tol);
}

/// Tie test for argmax selection: value is within the relative tie tolerance
/// of the maximum.
inline bool within_tie(double value, double best, double tol = kTieTol) {
  if (value == best) return true;
  return value >= best - tol * std::fabs(best);
}

}  // namespace bargain
