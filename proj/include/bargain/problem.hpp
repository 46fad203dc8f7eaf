#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace bargain {

/// A payoff vector in the nonnegative orthant, one coordinate per player.
class UtilityVector {
 public:
  UtilityVector() = default;
  explicit UtilityVector(std::vector<double> coords);
  UtilityVector(std::initializer_list<double> coords)
      : UtilityVector(std::vector<double>(coords)) {}

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& values() const { return coords_; }

  auto operator<=>(const UtilityVector&) const = default;

  std::string str() const;

 private:
  std::vector<double> coords_;
};

/// x_i >= y_i for all i, within the relative dominance tolerance.
bool weakly_dominates(const UtilityVector& x, const UtilityVector& y);
/// x_i > y_i for all i, by more than the relative dominance tolerance.
bool strictly_dominates(const UtilityVector& x, const UtilityVector& y);
/// Coordinatewise equality within the relative tolerance.
bool approx_equal(const UtilityVector& x, const UtilityVector& y,
                  double tol = 1e-9);
double max_norm_distance(const UtilityVector& x, const UtilityVector& y);

UtilityVector hadamard(const UtilityVector& x, const UtilityVector& y);

/// A bijection of {0..n-1}; applying it to x yields (x[p(0)], ..., x[p(n-1)]).
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> map);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return map_.size(); }
  std::size_t operator[](std::size_t i) const { return map_[i]; }
  Permutation inverse() const;

  template <class T>
  std::vector<T> apply(std::span<const T> x) const {
    std::vector<T> out(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) out[i] = x[map_[i]];
    return out;
  }
  UtilityVector apply(const UtilityVector& x) const;

 private:
  std::vector<std::size_t> map_;
};

/// All n! permutations in lexicographic order, identity first.
std::vector<Permutation> all_permutations(std::size_t n);

/// A finitely generated comprehensive bargaining problem cmp(generators).
///
/// Generators form the Pareto-maximal antichain, sorted lexicographically, so
/// two problems represent the same set iff their generator lists are equal.
class Problem {
 public:
  std::size_t dim() const { return dim_; }
  const std::vector<UtilityVector>& generators() const { return generators_; }

  bool operator==(const Problem&) const = default;

  friend Problem canonicalize(std::span<const UtilityVector> points);

 private:
  Problem(std::size_t dim, std::vector<UtilityVector> generators)
      : dim_(dim), generators_(std::move(generators)) {}

  std::size_t dim_ = 0;
  std::vector<UtilityVector> generators_;
};

using IdealPoint = UtilityVector;

Problem canonicalize(std::span<const UtilityVector> points);
inline Problem canonicalize(std::initializer_list<UtilityVector> points) {
  return canonicalize(std::span<const UtilityVector>(points.begin(), points.size()));
}

Problem symmetric_hull(std::span<const UtilityVector> points);
inline Problem symmetric_hull(std::initializer_list<UtilityVector> points) {
  return symmetric_hull(std::span<const UtilityVector>(points.begin(), points.size()));
}

IdealPoint ideal_point(const Problem& s);
bool contains(const Problem& s, const UtilityVector& x);
/// Every generator of inner lies in outer.
bool is_subset(const Problem& inner, const Problem& outer);
bool approx_equal(const Problem& s, const Problem& t, double tol = 1e-9);

Problem scale(const Problem& s, std::span<const double> factors);
Problem permute(const Problem& s, const Permutation& p);
Problem power(const Problem& s, int m);
Problem star(const Problem& s);

bool is_equal_ideal(const Problem& s);
bool is_symmetric(const Problem& s);

/// Max-norm Hausdorff distance between the two comprehensive sets.
double hausdorff_distance(const Problem& s, const Problem& t);

/// Generators plus the per-axis grid points (step b_j / resolution) lying on
/// the weak Pareto frontier of s. Sorted lexicographically, duplicates removed.
std::vector<UtilityVector> candidate_points(const Problem& s, int resolution);

/// No generator strictly dominates x in every coordinate.
bool is_weakly_pareto(const Problem& s, const UtilityVector& x);
/// x coincides with a generator (no point of s weakly improves on it).
bool is_strongly_pareto(const Problem& s, const UtilityVector& x);

/// Sort lexicographically and drop approximate duplicates.
void sort_unique(std::vector<UtilityVector>& points);

}  // namespace bargain
