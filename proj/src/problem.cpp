#include "bargain/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bargain/error.hpp"
#include "bargain/kernels.hpp"
#include "bargain/tolerance.hpp"

namespace bargain {

UtilityVector::UtilityVector(std::vector<double> coords)
    : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw InvariantError("utility vector needs at least 2 coordinates");
  }
  for (double c : coords_) {
    if (!std::isfinite(c) || c < 0.0) {
      throw InvariantError("utility vector coordinates must be finite and >= 0");
    }
  }
}

std::string UtilityVector::str() const {
  std::ostringstream os;
  os.precision(10);
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

bool weakly_dominates(const UtilityVector& x, const UtilityVector& y) {
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (!approx_ge(x[i], y[i])) return false;
  }
  return true;
}

bool strictly_dominates(const UtilityVector& x, const UtilityVector& y) {
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (!clearly_gt(x[i], y[i])) return false;
  }
  return true;
}

bool approx_equal(const UtilityVector& x, const UtilityVector& y, double tol) {
  if (x.dim() != y.dim()) return false;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (!bargain::approx_eq(x[i], y[i], tol)) return false;
  }
  return true;
}

double max_norm_distance(const UtilityVector& x, const UtilityVector& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) d = std::max(d, std::fabs(x[i] - y[i]));
  return d;
}

UtilityVector hadamard(const UtilityVector& x, const UtilityVector& y) {
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = x[i] * y[i];
  return UtilityVector(std::move(out));
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t v : map_) {
    if (v >= map_.size() || seen[v]) throw InputError("invalid permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

UtilityVector Permutation::apply(const UtilityVector& x) const {
  if (x.dim() != map_.size()) throw InputError("permutation dimension mismatch");
  return UtilityVector(apply(x.coords()));
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

void sort_unique(std::vector<UtilityVector>& points) {
  std::sort(points.begin(), points.end());
  auto last = std::unique(points.begin(), points.end(),
                          [](const UtilityVector& a, const UtilityVector& b) {
                            return approx_equal(a, b);
                          });
  points.erase(last, points.end());
}

Problem canonicalize(std::span<const UtilityVector> points) {
  if (points.empty()) throw InputError("problem needs at least one point");
  const std::size_t n = points.front().dim();
  if (n < 2) throw InvariantError("problem dimension must be at least 2");
  for (const auto& p : points) {
    if (p.dim() != n) throw InputError("dimension mismatch among points");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = std::any_of(points.begin(), points.end(),
                                      [i](const UtilityVector& p) { return p[i] > 0.0; });
    if (!positive) {
      throw InvariantError("degenerate player " + std::to_string(i + 1) +
                           ": no point gives positive utility");
    }
  }

  std::vector<UtilityVector> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  // Among mutually dominating (approximately equal) points keep the
  // lexicographically largest.
  std::vector<UtilityVector> kept;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < sorted.size() && !dominated; ++j) {
      if (i == j || !weakly_dominates(sorted[j], sorted[i])) continue;
      dominated = !weakly_dominates(sorted[i], sorted[j]) || j > i;
    }
    if (!dominated) kept.push_back(sorted[i]);
  }
  return Problem(n, std::move(kept));
}

Problem symmetric_hull(std::span<const UtilityVector> points) {
  if (points.empty()) throw InputError("problem needs at least one point");
  const std::size_t n = points.front().dim();
  std::vector<UtilityVector> all;
  for (const auto& pi : all_permutations(n)) {
    for (const auto& p : points) all.push_back(pi.apply(p));
  }
  return canonicalize(all);
}

IdealPoint ideal_point(const Problem& s) {
  std::vector<double> b(s.dim(), 0.0);
  for (const auto& g : s.generators()) {
    for (std::size_t i = 0; i < s.dim(); ++i) b[i] = std::max(b[i], g[i]);
  }
  return IdealPoint(std::move(b));
}

bool contains(const Problem& s, const UtilityVector& x) {
  if (x.dim() != s.dim()) throw InputError("dimension mismatch in contains");
  return std::any_of(s.generators().begin(), s.generators().end(),
                     [&](const UtilityVector& g) { return weakly_dominates(g, x); });
}

bool is_subset(const Problem& inner, const Problem& outer) {
  if (inner.dim() != outer.dim()) return false;
  return std::all_of(inner.generators().begin(), inner.generators().end(),
                     [&](const UtilityVector& g) { return contains(outer, g); });
}

bool approx_equal(const Problem& s, const Problem& t, double tol) {
  if (s.dim() != t.dim() || s.generators().size() != t.generators().size()) {
    return false;
  }
  for (std::size_t k = 0; k < s.generators().size(); ++k) {
    if (!approx_equal(s.generators()[k], t.generators()[k], tol)) return false;
  }
  return true;
}

Problem scale(const Problem& s, std::span<const double> factors) {
  if (factors.size() != s.dim()) throw InputError("scale vector dimension mismatch");
  for (double a : factors) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw InvariantError("scale factors must be positive");
    }
  }
  std::vector<UtilityVector> out;
  out.reserve(s.generators().size());
  for (const auto& g : s.generators()) {
    std::vector<double> c(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) c[i] = factors[i] * g[i];
    out.emplace_back(std::move(c));
  }
  return canonicalize(out);
}

Problem permute(const Problem& s, const Permutation& p) {
  if (p.size() != s.dim()) throw InputError("permutation dimension mismatch");
  std::vector<UtilityVector> out;
  for (const auto& g : s.generators()) out.push_back(p.apply(g));
  return canonicalize(out);
}

Problem power(const Problem& s, int m) {
  if (m < 1) throw InvariantError("power exponent must be >= 1");
  std::vector<UtilityVector> out;
  for (const auto& g : s.generators()) {
    std::vector<double> c(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) c[i] = std::pow(g[i], m);
    out.emplace_back(std::move(c));
  }
  return canonicalize(out);
}

Problem star(const Problem& s) {
  std::vector<UtilityVector> out;
  const auto& gens = s.generators();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a; b < gens.size(); ++b) {
      out.push_back(hadamard(gens[a], gens[b]));
    }
  }
  return canonicalize(out);
}

bool is_equal_ideal(const Problem& s) {
  const IdealPoint b = ideal_point(s);
  for (std::size_t i = 1; i < b.dim(); ++i) {
    if (!approx_eq(b[i], b[0])) return false;
  }
  return true;
}

bool is_symmetric(const Problem& s) {
  for (const auto& p : all_permutations(s.dim())) {
    if (!approx_equal(permute(s, p), s)) return false;
  }
  return true;
}

namespace {

// sup over x in cmp(from) of the distance from x to cmp(to). The distance
// from x to a box [0, h] is max_i (x_i - h_i)^+, which is monotone in x, so
// the supremum is attained at a generator of `from`.
double directed_distance(const Problem& from, const Problem& to) {
  double worst = 0.0;
  for (const auto& g : from.generators()) {
    double nearest = INFINITY;
    for (const auto& h : to.generators()) {
      double d = 0.0;
      for (std::size_t i = 0; i < g.dim(); ++i) d = std::max(d, g[i] - h[i]);
      nearest = std::min(nearest, d);
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const Problem& s, const Problem& t) {
  if (s.dim() != t.dim()) throw InputError("dimension mismatch in hausdorff_distance");
  return std::max(directed_distance(s, t), directed_distance(t, s));
}

bool is_weakly_pareto(const Problem& s, const UtilityVector& x) {
  return std::none_of(s.generators().begin(), s.generators().end(),
                      [&](const UtilityVector& g) { return strictly_dominates(g, x); });
}

bool is_strongly_pareto(const Problem& s, const UtilityVector& x) {
  return std::any_of(s.generators().begin(), s.generators().end(),
                     [&](const UtilityVector& g) { return approx_equal(g, x); });
}

std::vector<UtilityVector> candidate_points(const Problem& s, int resolution) {
  if (resolution < 1) throw InputError("resolution must be >= 1");
  const std::size_t n = s.dim();
  const IdealPoint b = ideal_point(s);

  std::vector<UtilityVector> grid;
  for (const auto& g : s.generators()) {
    // Per coordinate: grid levels k * b_j / r not exceeding g_j, plus g_j.
    std::vector<std::vector<double>> levels(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (int k = 0; k <= resolution; ++k) {
        const double v = k * b[j] / resolution;
        if (v <= g[j] && !approx_eq(v, g[j])) levels[j].push_back(v);
      }
      levels[j].push_back(g[j]);
    }
    // Faces x_i = g_i of the box [0, g]; faces through a zero coordinate are
    // degenerate and lie below the other faces.
    for (std::size_t i = 0; i < n; ++i) {
      if (g[i] <= 0.0) continue;
      std::vector<std::size_t> idx(n, 0);
      std::vector<double> c(n);
      while (true) {
        for (std::size_t j = 0; j < n; ++j) c[j] = (j == i) ? g[i] : levels[j][idx[j]];
        grid.emplace_back(c);
        std::size_t j = 0;
        for (; j < n; ++j) {
          if (j == i) continue;
          if (++idx[j] < levels[j].size()) break;
          idx[j] = 0;
        }
        if (j == n) break;
      }
    }
  }

  const Columns cols = Columns::from_points(grid);
  const auto ptrs = cols.pointers();
  std::vector<std::uint8_t> dominated(grid.size(), 0);
  const auto& k = kernels::active();
  for (const auto& g : s.generators()) {
    k.mark_dominated(ptrs.data(), n, grid.size(), g.coords().data(), kEqTol,
                     dominated.data());
  }
  std::vector<UtilityVector> out;
  out.reserve(grid.size() + s.generators().size());
  for (std::size_t r = 0; r < grid.size(); ++r) {
    if (!dominated[r]) out.push_back(std::move(grid[r]));
  }
  for (const auto& g : s.generators()) out.push_back(g);
  sort_unique(out);
  return out;
}

}  // namespace bargain
