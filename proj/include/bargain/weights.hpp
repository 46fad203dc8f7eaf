#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "bargain/problem.hpp"

namespace bargain {

/// A point of the weight simplex: nonnegative, summing to one.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> w);
  WeightVector(std::initializer_list<double> w)
      : WeightVector(std::vector<double>(w)) {}

  static WeightVector uniform(std::size_t n);
  static WeightVector unit(std::size_t n, std::size_t i);

  std::size_t dim() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> coords() const { return w_; }
  const std::vector<double>& values() const { return w_; }

  auto operator<=>(const WeightVector&) const = default;

 private:
  std::vector<double> w_;
};

/// sum_i w_i g_i with the conventions w_i * (-inf) = -inf for w_i > 0 and
/// 0 for w_i = 0.
double weighted_log_sum(const WeightVector& w, std::span<const double> g);

/// A convex polytope inside the simplex, stored by its vertices (sorted,
/// deduplicated, redundant vertices removed).
class WeightSet {
 public:
  explicit WeightSet(std::vector<WeightVector> vertices);
  WeightSet(std::initializer_list<WeightVector> vertices)
      : WeightSet(std::vector<WeightVector>(vertices)) {}

  static WeightSet simplex(std::size_t n);
  static WeightSet singleton(WeightVector w);

  std::size_t dim() const { return vertices_.front().dim(); }
  const std::vector<WeightVector>& vertices() const { return vertices_; }
  WeightSet permuted(const Permutation& p) const;

  /// Convex-hull membership, decided with the LP kernel.
  bool contains(const WeightVector& w, double tol = 1e-9) const;

  bool operator==(const WeightSet&) const = default;

 private:
  std::vector<WeightVector> vertices_;
};

/// A finite collection of weight sets (one per "expert").
class WeightCollection {
 public:
  explicit WeightCollection(std::vector<WeightSet> sets, bool symmetrize = false);

  std::size_t dim() const { return sets_.front().dim(); }
  const std::vector<WeightSet>& sets() const { return sets_; }
  bool is_symmetric() const;

 private:
  std::vector<WeightSet> sets_;
};

struct AffinePiece {
  std::vector<double> slope;
  double intercept = 0.0;
  auto operator<=>(const AffinePiece&) const = default;
};

/// A log-convex confidence function: log c(w) = max_k (a_k . w + b_k) on the
/// support polytope and +inf outside it.
class ConfidenceFunction {
 public:
  ConfidenceFunction(WeightSet support, std::vector<AffinePiece> pieces);

  std::size_t dim() const { return support_.dim(); }
  const WeightSet& support() const { return support_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }

  /// log c(w) for w in the support (membership is not checked).
  double log_value(std::span<const double> w) const;
  ConfidenceFunction permuted(const Permutation& p) const;
  ConfidenceFunction shifted(double delta) const;

  bool operator==(const ConfidenceFunction&) const = default;

 private:
  WeightSet support_;
  std::vector<AffinePiece> pieces_;
};

class ConfidenceCollection {
 public:
  explicit ConfidenceCollection(std::vector<ConfidenceFunction> functions,
                                bool symmetrize = false);

  /// The collection {c = 1 on the whole simplex}.
  static ConfidenceCollection constant_one(std::size_t n);
  /// The collection {c = 1 at the uniform weight, +inf elsewhere}.
  static ConfidenceCollection nash(std::size_t n);

  std::size_t dim() const { return functions_.front().dim(); }
  const std::vector<ConfidenceFunction>& functions() const { return functions_; }
  bool symmetric() const { return symmetric_; }

  /// max over functions of min over their support of log c.
  double normalization_level() const;
  bool is_normalized(double tol = 1e-9) const {
    const double l = normalization_level();
    return l <= tol && l >= -tol;
  }

 private:
  friend ConfidenceCollection symmetrize(const ConfidenceCollection& c);

  std::vector<ConfidenceFunction> functions_;
  bool symmetric_ = false;
};

struct InnerMin {
  double value = 0.0;
  WeightVector argmin;
};

/// min over W of g . w. The minimum is attained at a vertex; ties go to the
/// lexicographically smallest vertex.
InnerMin min_linear_over_polytope(const WeightSet& w, std::span<const double> g);

/// min over the support of log c(w) + g . w, solved exactly as a linear
/// program in the convex-combination coefficients of the support vertices
/// (or as a vertex scan when c has a single affine piece).
InnerMin min_confidence_over_simplex(const ConfidenceFunction& c,
                                     std::span<const double> g);

struct NormalizedCollection {
  ConfidenceCollection collection;
  std::size_t attained_by = 0;  // index of the function attaining the max
  double shift = 0.0;           // constant subtracted from every intercept
};

NormalizedCollection normalize_collection(const ConfidenceCollection& c);

WeightCollection symmetrize(const WeightCollection& c);
ConfidenceCollection symmetrize(const ConfidenceCollection& c);

/// All points (k_1/r, ..., k_n/r) with sum k_i = r.
std::vector<WeightVector> simplex_grid(std::size_t n, int resolution);

}  // namespace bargain
