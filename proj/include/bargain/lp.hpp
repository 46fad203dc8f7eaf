#pragma once

// Dense two-phase simplex method for small linear programs.
//
//   minimize  c . x   subject to  rows (<=, >=, =),  x >= 0
//
// Pivoting follows Bland's rule (lowest-index entering and leaving
// variables), so results are deterministic and cycling cannot occur.

#include <cstddef>
#include <string>
#include <vector>

namespace bargain::lp {

enum class Sense { less_equal, greater_equal, equal };
enum class Status { optimal, infeasible, unbounded };

std::string to_string(Status s);

struct Constraint {
  std::vector<double> coeffs;
  Sense sense = Sense::less_equal;
  double rhs = 0.0;
};

struct LinearProgram {
  std::vector<double> objective;  // one entry per variable
  std::vector<Constraint> constraints;
};

struct Solution {
  Status status = Status::infeasible;
  double value = 0.0;
  std::vector<double> x;
};

Solution solve(const LinearProgram& program);

}  // namespace bargain::lp
