#include "bargain/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "bargain/error.hpp"
#include "bargain/lp.hpp"
#include "bargain/tolerance.hpp"

namespace bargain {

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.size() < 2) throw InvariantError("weight vector needs at least 2 coordinates");
  double sum = 0.0;
  for (double v : w_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvariantError("weight coordinates must be finite and >= 0");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kSimplexTol * static_cast<double>(w_.size())) {
    throw InvariantError("weight vector must sum to 1");
  }
}

WeightVector WeightVector::uniform(std::size_t n) {
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightVector WeightVector::unit(std::size_t n, std::size_t i) {
  std::vector<double> w(n, 0.0);
  w.at(i) = 1.0;
  return WeightVector(std::move(w));
}

double weighted_log_sum(const WeightVector& w, std::span<const double> g) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.dim(); ++i) {
    if (w[i] != 0.0) s = s + w[i] * g[i];
  }
  return s;
}

namespace {

// Is v a convex combination of `others`?
bool in_hull(const WeightVector& v, std::span<const WeightVector> others,
             double tol) {
  if (others.empty()) return false;
  lp::LinearProgram prog;
  prog.objective.assign(others.size(), 0.0);
  for (std::size_t i = 0; i < v.dim(); ++i) {
    lp::Constraint row;
    for (const auto& u : others) row.coeffs.push_back(u[i]);
    row.sense = lp::Sense::equal;
    row.rhs = v[i];
    prog.constraints.push_back(std::move(row));
  }
  // The coordinate rows already force sum(lambda) = 1 because every point
  // sums to one; the explicit row keeps phase one well scaled.
  prog.constraints.push_back({std::vector<double>(others.size(), 1.0),
                              lp::Sense::equal, 1.0});
  const auto sol = lp::solve(prog);
  if (sol.status != lp::Status::optimal) return false;
  double err = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < others.size(); ++j) s += sol.x[j] * others[j][i];
    err = std::max(err, std::fabs(s - v[i]));
  }
  return err <= tol;
}

bool approx_same(const WeightVector& a, const WeightVector& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (std::fabs(a[i] - b[i]) > 1e-12) return false;
  }
  return true;
}

}  // namespace

WeightSet::WeightSet(std::vector<WeightVector> vertices) {
  if (vertices.empty()) throw InvariantError("weight set needs at least one vertex");
  const std::size_t n = vertices.front().dim();
  for (const auto& v : vertices) {
    if (v.dim() != n) throw InputError("weight set vertex dimension mismatch");
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end(), approx_same),
                 vertices.end());
  // Remove vertices lying in the hull of the remaining ones, one at a time.
  for (std::size_t i = 0; i < vertices.size() && vertices.size() > 1;) {
    std::vector<WeightVector> others;
    for (std::size_t j = 0; j < vertices.size(); ++j) {
      if (j != i) others.push_back(vertices[j]);
    }
    if (in_hull(vertices[i], others, 1e-10)) {
      vertices.erase(vertices.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  vertices_ = std::move(vertices);
}

WeightSet WeightSet::simplex(std::size_t n) {
  std::vector<WeightVector> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(WeightVector::unit(n, i));
  return WeightSet(std::move(v));
}

WeightSet WeightSet::singleton(WeightVector w) { return WeightSet({std::move(w)}); }

WeightSet WeightSet::permuted(const Permutation& p) const {
  std::vector<WeightVector> v;
  for (const auto& u : vertices_) v.emplace_back(p.apply(u.coords()));
  return WeightSet(std::move(v));
}

bool WeightSet::contains(const WeightVector& w, double tol) const {
  for (const auto& v : vertices_) {
    if (approx_same(v, w)) return true;
  }
  return in_hull(w, vertices_, tol);
}

WeightCollection::WeightCollection(std::vector<WeightSet> sets, bool symmetrize)
    : sets_(std::move(sets)) {
  if (sets_.empty()) throw InvariantError("weight collection must be nonempty");
  for (const auto& s : sets_) {
    if (s.dim() != sets_.front().dim()) {
      throw InputError("weight collection dimension mismatch");
    }
  }
  if (symmetrize) *this = bargain::symmetrize(*this);
}

bool WeightCollection::is_symmetric() const {
  for (const auto& p : all_permutations(dim())) {
    for (const auto& s : sets_) {
      if (std::find(sets_.begin(), sets_.end(), s.permuted(p)) == sets_.end()) {
        return false;
      }
    }
  }
  return true;
}

ConfidenceFunction::ConfidenceFunction(WeightSet support,
                                       std::vector<AffinePiece> pieces)
    : support_(std::move(support)), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvariantError("confidence function needs an affine piece");
  for (const auto& p : pieces_) {
    if (p.slope.size() != support_.dim()) {
      throw InputError("affine piece slope dimension mismatch");
    }
    if (!std::isfinite(p.intercept) ||
        !std::all_of(p.slope.begin(), p.slope.end(),
                     [](double v) { return std::isfinite(v); })) {
      throw InvariantError("affine pieces must be finite");
    }
  }
  std::sort(pieces_.begin(), pieces_.end());
  pieces_.erase(std::unique(pieces_.begin(), pieces_.end()), pieces_.end());
}

double ConfidenceFunction::log_value(std::span<const double> w) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) {
    double s = p.intercept;
    for (std::size_t i = 0; i < w.size(); ++i) s += p.slope[i] * w[i];
    best = std::max(best, s);
  }
  return best;
}

ConfidenceFunction ConfidenceFunction::permuted(const Permutation& p) const {
  std::vector<AffinePiece> pieces;
  for (const auto& piece : pieces_) {
    pieces.push_back({p.apply(std::span<const double>(piece.slope)), piece.intercept});
  }
  return ConfidenceFunction(support_.permuted(p), std::move(pieces));
}

ConfidenceFunction ConfidenceFunction::shifted(double delta) const {
  auto pieces = pieces_;
  for (auto& p : pieces) p.intercept += delta;
  return ConfidenceFunction(support_, std::move(pieces));
}

ConfidenceCollection::ConfidenceCollection(std::vector<ConfidenceFunction> functions,
                                           bool symmetrize)
    : functions_(std::move(functions)), symmetric_(false) {
  if (functions_.empty()) throw InvariantError("confidence collection must be nonempty");
  for (const auto& f : functions_) {
    if (f.dim() != functions_.front().dim()) {
      throw InputError("confidence collection dimension mismatch");
    }
  }
  if (symmetrize) *this = bargain::symmetrize(*this);
}

ConfidenceCollection ConfidenceCollection::constant_one(std::size_t n) {
  return ConfidenceCollection(
      {ConfidenceFunction(WeightSet::simplex(n), {{std::vector<double>(n, 0.0), 0.0}})});
}

ConfidenceCollection ConfidenceCollection::nash(std::size_t n) {
  return ConfidenceCollection({ConfidenceFunction(
      WeightSet::singleton(WeightVector::uniform(n)), {{std::vector<double>(n, 0.0), 0.0}})});
}

double ConfidenceCollection::normalization_level() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& f : functions_) {
    const std::vector<double> zero(f.dim(), 0.0);
    best = std::max(best, min_confidence_over_simplex(f, zero).value);
  }
  return best;
}

InnerMin min_linear_over_polytope(const WeightSet& w, std::span<const double> g) {
  if (g.size() != w.dim()) throw InputError("dimension mismatch in min_linear_over_polytope");
  InnerMin out;
  out.value = std::numeric_limits<double>::infinity();
  for (const auto& v : w.vertices()) {
    const double s = weighted_log_sum(v, g);
    if (s < out.value || out.argmin.dim() == 0) {
      out.value = s;
      out.argmin = v;
    }
  }
  return out;
}

InnerMin min_confidence_over_simplex(const ConfidenceFunction& c,
                                     std::span<const double> g) {
  if (g.size() != c.dim()) {
    throw InputError("dimension mismatch in min_confidence_over_simplex");
  }
  const auto& verts = c.support().vertices();
  const std::size_t n = c.dim();

  // A vertex putting weight on a -inf coordinate makes the minimum -inf.
  std::vector<double> finite_g(g.begin(), g.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isinf(g[i])) continue;
    for (const auto& v : verts) {
      if (v[i] > 0.0) return {-std::numeric_limits<double>::infinity(), v};
    }
    finite_g[i] = 0.0;  // no support point uses coordinate i
  }

  if (c.pieces().size() == 1) {
    const AffinePiece& p = c.pieces().front();
    InnerMin out;
    out.value = std::numeric_limits<double>::infinity();
    for (const auto& v : verts) {
      double s = p.intercept;
      for (std::size_t i = 0; i < n; ++i) s += p.slope[i] * v[i];
      s += weighted_log_sum(v, finite_g);
      if (s < out.value || out.argmin.dim() == 0) {
        out.value = s;
        out.argmin = v;
      }
    }
    return out;
  }

  // Variables: lambda_1..lambda_m, t+, t-.
  const std::size_t m = verts.size();
  lp::LinearProgram prog;
  prog.objective.resize(m + 2);
  for (std::size_t j = 0; j < m; ++j) {
    prog.objective[j] = weighted_log_sum(verts[j], finite_g);
  }
  prog.objective[m] = 1.0;
  prog.objective[m + 1] = -1.0;
  for (const auto& p : c.pieces()) {
    lp::Constraint row;
    row.coeffs.resize(m + 2);
    for (std::size_t j = 0; j < m; ++j) {
      double av = 0.0;
      for (std::size_t i = 0; i < n; ++i) av += p.slope[i] * verts[j][i];
      row.coeffs[j] = -av;
    }
    row.coeffs[m] = 1.0;
    row.coeffs[m + 1] = -1.0;
    row.sense = lp::Sense::greater_equal;
    row.rhs = p.intercept;
    prog.constraints.push_back(std::move(row));
  }
  lp::Constraint simplex_row;
  simplex_row.coeffs.assign(m + 2, 0.0);
  for (std::size_t j = 0; j < m; ++j) simplex_row.coeffs[j] = 1.0;
  simplex_row.sense = lp::Sense::equal;
  simplex_row.rhs = 1.0;
  prog.constraints.push_back(std::move(simplex_row));

  const auto sol = lp::solve(prog);
  if (sol.status != lp::Status::optimal) {
    throw InvariantError("confidence LP was " + lp::to_string(sol.status) +
                         "; the support polytope must be nonempty and compact");
  }
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) total += sol.x[j];
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) w[i] += sol.x[j] / total * verts[j][i];
  }
  for (double& v : w) v = std::max(v, 0.0);
  return {sol.value, WeightVector(std::move(w))};
}

NormalizedCollection normalize_collection(const ConfidenceCollection& c) {
  std::size_t best_index = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c.functions().size(); ++k) {
    const auto& f = c.functions()[k];
    const std::vector<double> zero(f.dim(), 0.0);
    const double v = min_confidence_over_simplex(f, zero).value;
    if (v > best) {
      best = v;
      best_index = k;
    }
  }
  if (best == 0.0) return {c, best_index, 0.0};
  std::vector<ConfidenceFunction> shifted;
  for (const auto& f : c.functions()) shifted.push_back(f.shifted(-best));
  ConfidenceCollection out(std::move(shifted));
  if (c.symmetric()) out = symmetrize(out);
  return {out, best_index, best};
}

WeightCollection symmetrize(const WeightCollection& c) {
  std::vector<WeightSet> out;
  for (const auto& s : c.sets()) {
    for (const auto& p : all_permutations(c.dim())) {
      WeightSet image = s.permuted(p);
      if (std::find(out.begin(), out.end(), image) == out.end()) {
        out.push_back(std::move(image));
      }
    }
  }
  return WeightCollection(std::move(out));
}

ConfidenceCollection symmetrize(const ConfidenceCollection& c) {
  std::vector<ConfidenceFunction> out;
  for (const auto& f : c.functions()) {
    for (const auto& p : all_permutations(c.dim())) {
      ConfidenceFunction image = f.permuted(p);
      if (std::find(out.begin(), out.end(), image) == out.end()) {
        out.push_back(std::move(image));
      }
    }
  }
  ConfidenceCollection result(std::move(out));
  result.symmetric_ = true;
  return result;
}

std::vector<WeightVector> simplex_grid(std::size_t n, int resolution) {
  if (resolution < 1) throw InputError("simplex grid resolution must be >= 1");
  std::vector<WeightVector> out;
  std::vector<int> k(n, 0);
  // Enumerate compositions of `resolution` into n parts in lexicographic order.
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      k[i] = left;
      std::vector<double> w(n);
      for (std::size_t j = 0; j < n; ++j) {
        w[j] = static_cast<double>(k[j]) / resolution;
      }
      out.emplace_back(std::move(w));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, resolution);
  return out;
}

}  // namespace bargain
