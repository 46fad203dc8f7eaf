#pragma once

// The seeded evidence base for axiom checks. All randomness flows from a
// single seed through std::mt19937_64.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "bargain/problem.hpp"

namespace bargain {

struct CorpusConfig {
  std::uint64_t seed = 42;
  int random_per_dim = 200;  // random problems per dimension n in {2, 3}
  int symmetric = 50;
  int nested = 50;           // nested pairs with equal ideal coordinates
  int equal_ideal = 50;
  int suite = 50;            // random problems used by the per-problem axioms
  int scale_vectors = 5;
};

struct Corpus {
  CorpusConfig config;
  std::vector<Problem> random{};       // n = 2 block, then n = 3 block
  std::vector<Problem> suite{};        // evenly drawn from both blocks of random
  std::vector<Problem> symmetric{};
  std::vector<std::pair<Problem, Problem>> nested{};  // (S, S'), S' inside S
  std::vector<std::pair<Problem, Problem>> general_nested{};  // no ideal-point constraint
  std::vector<Problem> equal_ideal{};
  std::vector<std::vector<double>> scale_vectors_2{};
  std::vector<std::vector<double>> scale_vectors_3{};

  // Hand-built cases.
  Problem utilitarian_scale_case;         // with scale vector (10, 1)
  std::pair<Problem, Problem> weak_pareto_iia_case;
  std::pair<Problem, Problem> ks_iia_case;
  Problem dictatorship_anonymity_case;
  Problem threshold_limit;                // limit of the lexicographic threshold family
  bool hand_cases = true;                 // false: checks skip the hand-built cases

  const std::vector<std::vector<double>>& scale_vectors(std::size_t n) const {
    return n == 2 ? scale_vectors_2 : scale_vectors_3;
  }
};

Corpus build_corpus(const CorpusConfig& config = {});

/// A corpus made of given problems and nested pairs. Problems fill suite,
/// symmetric and equal_ideal by their shape; pairs with both sides equal-ideal
/// go to nested, the rest to general_nested. Scale vectors come from seed.
Corpus corpus_from_problems(const std::vector<Problem>& problems,
                            const std::vector<std::pair<Problem, Problem>>& pairs,
                            std::uint64_t seed = 42);

/// scmp{(1, 0.5), (0.5 + delta, 0.5 + delta)}; at delta = 0 this is
/// cmp{(1, 0.5), (0.5, 1)}, where the order statistics of the two
/// families of maximizers tie.
Problem threshold_problem(double delta);

/// n-dimensional problem with 1..5 generators, coordinates in [0.1, 2].
Problem random_problem(std::mt19937_64& rng, std::size_t n);

}  // namespace bargain
