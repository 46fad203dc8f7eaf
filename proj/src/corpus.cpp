#include "bargain/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "bargain/error.hpp"

namespace bargain {

namespace {

using Rng = std::mt19937_64;

std::vector<UtilityVector> random_points(Rng& rng, std::size_t n, int lo, int hi) {
  std::uniform_real_distribution<double> coord(0.1, 2.0);
  std::uniform_int_distribution<int> count(lo, hi);
  std::vector<UtilityVector> pts;
  for (int k = count(rng); k > 0; --k) {
    std::vector<double> c(n);
    for (auto& v : c) v = coord(rng);
    pts.emplace_back(std::move(c));
  }
  return pts;
}

// Scale each coordinate so the ideal point becomes (1, ..., 1).
Problem equalize(const Problem& s) {
  const IdealPoint b = ideal_point(s);
  std::vector<double> a(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) a[i] = 1.0 / b[i];
  return scale(s, a);
}

// A nonempty random subset, in generator order.
std::vector<UtilityVector> random_subset(Rng& rng, const std::vector<UtilityVector>& gens) {
  std::bernoulli_distribution keep(0.6);
  std::vector<UtilityVector> out;
  for (const auto& g : gens) {
    if (keep(rng)) out.push_back(g);
  }
  if (out.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    out.push_back(gens[pick(rng)]);
  }
  return out;
}

// S symmetric; S' the symmetric hull of some of S's generators and shrunk
// copies of others.
std::pair<Problem, Problem> symmetric_pair(Rng& rng, std::size_t n) {
  const Problem s = symmetric_hull(random_points(rng, n, 1, 3));
  std::uniform_real_distribution<double> shrink(0.5, 0.95);
  std::bernoulli_distribution coin(0.5);
  std::vector<UtilityVector> inner;
  for (const auto& g : s.generators()) {
    if (coin(rng)) {
      inner.push_back(g);
    } else if (coin(rng)) {
      std::vector<double> c = g.values();
      for (auto& v : c) v *= shrink(rng);
      inner.emplace_back(std::move(c));
    }
  }
  if (inner.empty()) inner.push_back(s.generators().front());
  return {s, symmetric_hull(inner)};
}

// S with ideal point 1; S' = some of S's generators clipped at the smallest
// ideal coordinate of that subset, so both have equal ideal coordinates.
std::pair<Problem, Problem> clipped_pair(Rng& rng, std::size_t n) {
  const Problem s = equalize(canonicalize(random_points(rng, n, 2, 5)));
  std::vector<UtilityVector> sub = random_subset(rng, s.generators());
  std::vector<double> top(n, 0.0);
  for (const auto& g : sub) {
    for (std::size_t i = 0; i < n; ++i) top[i] = std::max(top[i], g[i]);
  }
  const double beta = *std::min_element(top.begin(), top.end());
  if (!(beta > 0.0)) return {s, s};
  for (auto& g : sub) {
    std::vector<double> c = g.values();
    for (auto& v : c) v = std::min(v, beta);
    g = UtilityVector(std::move(c));
  }
  return {s, canonicalize(sub)};
}

std::pair<Problem, Problem> general_pair(Rng& rng, std::size_t n) {
  const Problem s = canonicalize(random_points(rng, n, 1, 5));
  std::uniform_real_distribution<double> shrink(0.6, 1.0);
  std::vector<UtilityVector> sub = random_subset(rng, s.generators());
  for (auto& g : sub) {
    std::vector<double> c = g.values();
    for (auto& v : c) v *= shrink(rng);
    g = UtilityVector(std::move(c));
  }
  return {s, canonicalize(sub)};
}

std::vector<std::vector<double>> scale_vectors(Rng& rng, std::size_t n, int count) {
  std::uniform_real_distribution<double> log_factor(std::log(0.2), std::log(5.0));
  std::vector<std::vector<double>> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> a(n);
    for (auto& v : a) v = std::exp(log_factor(rng));
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

Problem random_problem(Rng& rng, std::size_t n) {
  return canonicalize(random_points(rng, n, 1, 5));
}

Problem threshold_problem(double delta) {
  return symmetric_hull({{1.0, 0.5}, {0.5 + delta, 0.5 + delta}});
}

namespace {

Corpus with_hand_cases(const CorpusConfig& config) {
  return Corpus{
      .config = config,
      .utilitarian_scale_case = canonicalize({{1, 0}, {0, 1}, {0.6, 0.6}}),
      .weak_pareto_iia_case = {canonicalize({{1, 1}}), canonicalize({{1, 0.5}, {0.5, 1}})},
      .ks_iia_case = {canonicalize({{2, 0.5}, {1, 1}}), canonicalize({{1.5, 0.5}, {1, 1}})},
      .dictatorship_anonymity_case = symmetric_hull({{2, 1}}),
      .threshold_limit = threshold_problem(0.0),
  };
}

}  // namespace

Corpus build_corpus(const CorpusConfig& config) {
  if (config.random_per_dim < 1 || config.suite < 2) {
    throw InputError("corpus sizes must be positive");
  }
  Corpus c = with_hand_cases(config);
  Rng rng(config.seed);

  for (std::size_t n : {2u, 3u}) {
    for (int k = 0; k < config.random_per_dim; ++k) c.random.push_back(random_problem(rng, n));
  }
  const int half = std::min(config.suite / 2, config.random_per_dim);
  for (int k = 0; k < half; ++k) {
    c.suite.push_back(c.random[k]);
    c.suite.push_back(c.random[config.random_per_dim + k]);
  }

  for (int k = 0; k < config.symmetric; ++k) {
    const std::size_t n = k % 2 == 0 ? 2 : 3;
    c.symmetric.push_back(symmetric_hull(random_points(rng, n, 1, 3)));
  }
  for (int k = 0; k < config.nested; ++k) {
    const std::size_t n = (k / 2) % 2 == 0 ? 2 : 3;
    c.nested.push_back(k % 2 == 0 ? symmetric_pair(rng, n) : clipped_pair(rng, n));
  }
  for (int k = 0; k < config.nested; ++k) {
    c.general_nested.push_back(general_pair(rng, k % 2 == 0 ? 2 : 3));
  }
  for (int k = 0; k < config.equal_ideal; ++k) {
    const std::size_t n = (k / 2) % 2 == 0 ? 2 : 3;
    c.equal_ideal.push_back(k % 2 == 0 ? symmetric_hull(random_points(rng, n, 1, 3))
                                       : equalize(random_problem(rng, n)));
  }
  c.scale_vectors_2 = scale_vectors(rng, 2, config.scale_vectors);
  c.scale_vectors_3 = scale_vectors(rng, 3, config.scale_vectors);
  return c;
}

Corpus corpus_from_problems(const std::vector<Problem>& problems,
                            const std::vector<std::pair<Problem, Problem>>& pairs,
                            std::uint64_t seed) {
  CorpusConfig config;
  config.seed = seed;
  Corpus c = with_hand_cases(config);
  c.hand_cases = false;
  for (const auto& s : problems) {
    c.suite.push_back(s);
    if (is_symmetric(s)) c.symmetric.push_back(s);
    if (is_equal_ideal(s)) c.equal_ideal.push_back(s);
  }
  for (const auto& pr : pairs) {
    if (!is_subset(pr.second, pr.first)) throw InputError("corpus pair is not nested");
    const bool eq = is_equal_ideal(pr.first) && is_equal_ideal(pr.second);
    (eq ? c.nested : c.general_nested).push_back(pr);
  }
  Rng rng(seed);
  c.scale_vectors_2 = scale_vectors(rng, 2, config.scale_vectors);
  c.scale_vectors_3 = scale_vectors(rng, 3, config.scale_vectors);
  return c;
}

}  // namespace bargain
