#include "bargain/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bargain/error.hpp"

namespace bargain::lp {

std::string to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kPivotEps = 1e-11;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows, std::vector<double>(cols + 1, 0.0)),
        obj_(cols + 1, 0.0), basis_(rows, 0), blocked_(cols, false) {}

  std::vector<double>& row(std::size_t r) { return a_[r]; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<bool>& blocked() { return blocked_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double rhs(std::size_t r) const { return a_[r][cols_]; }

  // Reduced costs of `cost` with respect to the current basis.
  void set_objective(const std::vector<double>& cost) {
    for (std::size_t j = 0; j <= cols_; ++j) obj_[j] = j < cols_ ? cost[j] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= cb * a_[r][j];
    }
  }

  double value() const { return -obj_[cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / a_[r][c];
    for (double& v : a_[r]) v *= inv;
    a_[r][c] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = a_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) a_[i][j] -= f * a_[r][j];
      a_[i][c] = 0.0;
    }
    const double f = obj_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= f * a_[r][j];
      obj_[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Returns false when the objective is unbounded below.
  bool run() {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!blocked_[j] && obj_[j] < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        if (a_[r][enter] <= kPivotEps) continue;
        const double ratio = a_[r][cols_] / a_[r][enter];
        if (ratio < best - kPivotEps ||
            (std::fabs(ratio - best) <= kPivotEps && leave < rows_ &&
             basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<std::vector<double>> a_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_;
  std::vector<bool> blocked_;
};

}  // namespace

Solution solve(const LinearProgram& program) {
  const std::size_t nvar = program.objective.size();
  const std::size_t m = program.constraints.size();
  for (const auto& c : program.constraints) {
    if (c.coeffs.size() != nvar) throw InputError("LP constraint has wrong width");
  }

  // Normalize rows to nonnegative right-hand sides.
  std::vector<Constraint> rows = program.constraints;
  std::size_t slacks = 0, artificials = 0;
  for (auto& c : rows) {
    if (c.rhs < 0.0) {
      for (double& v : c.coeffs) v = -v;
      c.rhs = -c.rhs;
      if (c.sense == Sense::less_equal) c.sense = Sense::greater_equal;
      else if (c.sense == Sense::greater_equal) c.sense = Sense::less_equal;
    }
    if (c.sense != Sense::equal) ++slacks;
    if (c.sense != Sense::less_equal) ++artificials;
  }

  const std::size_t cols = nvar + slacks + artificials;
  Tableau t(m, cols);
  std::size_t next_slack = nvar, next_art = nvar + slacks;
  for (std::size_t r = 0; r < m; ++r) {
    auto& row = t.row(r);
    for (std::size_t j = 0; j < nvar; ++j) row[j] = rows[r].coeffs[j];
    row[cols] = rows[r].rhs;
    switch (rows[r].sense) {
      case Sense::less_equal:
        row[next_slack] = 1.0;
        t.basis()[r] = next_slack++;
        break;
      case Sense::greater_equal:
        row[next_slack++] = -1.0;
        row[next_art] = 1.0;
        t.basis()[r] = next_art++;
        break;
      case Sense::equal:
        row[next_art] = 1.0;
        t.basis()[r] = next_art++;
        break;
    }
  }

  Solution sol;
  if (artificials > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = nvar + slacks; j < cols; ++j) phase1[j] = 1.0;
    t.set_objective(phase1);
    t.run();
    double scale = 1.0;
    for (const auto& c : rows) scale = std::max(scale, std::fabs(c.rhs));
    if (t.value() > 1e-9 * scale) {
      sol.status = Status::infeasible;
      return sol;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < t.rows();) {
      if (t.basis()[r] < nvar + slacks) {
        ++r;
        continue;
      }
      std::size_t c = cols;
      for (std::size_t j = 0; j < nvar + slacks; ++j) {
        if (std::fabs(t.row(r)[j]) > kPivotEps) {
          c = j;
          break;
        }
      }
      if (c == cols) {
        t.drop_row(r);
      } else {
        t.pivot(r, c);
        ++r;
      }
    }
    for (std::size_t j = nvar + slacks; j < cols; ++j) t.blocked()[j] = true;
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < nvar; ++j) cost[j] = program.objective[j];
  t.set_objective(cost);
  if (!t.run()) {
    sol.status = Status::unbounded;
    return sol;
  }
  sol.status = Status::optimal;
  sol.x.assign(nvar, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basis()[r] < nvar) sol.x[t.basis()[r]] = t.rhs(r);
  }
  sol.value = 0.0;
  for (std::size_t j = 0; j < nvar; ++j) sol.value += program.objective[j] * sol.x[j];
  return sol;
}

}  // namespace bargain::lp
