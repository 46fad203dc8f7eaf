#include <algorithm>
#include <cmath>
#include <random>

#include "bargain/error.hpp"
#include "bargain/kernels.hpp"
#include "bargain/solutions.hpp"
#include "doctest.h"

using namespace bargain;

namespace {

using Points = std::vector<UtilityVector>;

Problem random_problem(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> coord(0.1, 2.0);
  std::uniform_int_distribution<int> count(1, 5);
  Points pts;
  for (int j = count(rng); j > 0; --j) {
    std::vector<double> c(n);
    for (auto& v : c) v = coord(rng);
    pts.emplace_back(c);
  }
  return canonicalize(pts);
}

bool same_set(Points a, Points b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!approx_equal(a[k], b[k], tol)) return false;
  }
  return true;
}

UtilityVector random_point(std::mt19937_64& rng, std::size_t n, double lo = 0.05) {
  std::uniform_real_distribution<double> u(lo, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return UtilityVector(x);
}

std::vector<SolutionSpec> weighted_product_specs(std::size_t n) {
  std::vector<SolutionSpec> out;
  out.push_back(SolutionSpec::nash());
  out.push_back(SolutionSpec::kalai_smorodinsky());
  out.push_back(SolutionSpec::maxmin(WeightSet::simplex(n)));
  if (n == 2) {
    out.push_back(SolutionSpec::maxmin(WeightSet{{0.25, 0.75}, {0.75, 0.25}}));
    out.push_back(SolutionSpec::dualself(
        WeightCollection({WeightSet::singleton({0.7, 0.3})}, true)));
    out.push_back(SolutionSpec::confidence(
        normalize_collection(ConfidenceCollection(
                                 {ConfidenceFunction(WeightSet::simplex(2),
                                                     {{{1, 0}, -0.5}, {{-1, 0}, 0.5}})},
                                 true))
            .collection));
  }
  return out;
}

}  // namespace

TEST_CASE("normalize divides by the ideal point") {
  CHECK(normalize({1, 0.5}, {2, 1}) == UtilityVector{0.5, 0.5});
  CHECK(normalize({2, 1}, {2, 1}) == UtilityVector{1, 1});
  CHECK(normalize({0, 0}, {2, 1}) == UtilityVector{0, 0});
}

TEST_CASE("spec invariants") {
  CHECK_THROWS_AS(SolutionSpec::make(Family::egalitarian, true), InvariantError);
  CHECK_THROWS_AS(SolutionSpec::make(Family::utilitarian, true), InvariantError);
  CHECK_THROWS_AS(SolutionSpec::make(Family::kalai_smorodinsky, false), InvariantError);
  CHECK_THROWS_AS(SolutionSpec::make(Family::maxmin_nash, true), InvariantError);
  const ConfidenceCollection raised(
      {ConfidenceFunction(WeightSet::simplex(2), {{{0, 0}, 1.0}})});
  CHECK_THROWS_AS(SolutionSpec::confidence(raised), InvariantError);
  CHECK_NOTHROW(SolutionSpec::confidence(normalize_collection(raised).collection));
  CHECK_NOTHROW(SolutionSpec::maxmin(WeightSet::simplex(2), false));
}

TEST_CASE("objective values") {
  CHECK(eval_objective(SolutionSpec::nash(), {0.5, 0.5}) == doctest::Approx(0.25));
  CHECK(eval_objective(SolutionSpec::kalai_smorodinsky(), {0.5, 0.8}) == 0.5);
  CHECK(eval_objective(SolutionSpec::maxmin(WeightSet::simplex(2)), {0.5, 0.8}) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_objective(SolutionSpec::maxmin(WeightSet::singleton({0.5, 0.5})), {0.5, 0.8}) ==
        doctest::Approx(std::sqrt(0.5 * 0.8)).epsilon(1e-15));
  const WeightCollection extremes({WeightSet::singleton({1, 0}), WeightSet::singleton({0, 1})});
  CHECK(eval_objective(SolutionSpec::dualself(extremes), {0.5, 0.8}) ==
        doctest::Approx(0.8).epsilon(1e-15));
  CHECK(eval_objective(SolutionSpec::utilitarian(), {0.5, 0.8}) == doctest::Approx(1.3));
  CHECK(eval_objective(SolutionSpec::egalitarian(), {0.5, 0.8}) == 0.5);
}

TEST_CASE("witnesses name the active expert and weight") {
  const WeightCollection extremes({WeightSet::singleton({1, 0}), WeightSet::singleton({0, 1})});
  const Evaluation e = evaluate(SolutionSpec::dualself(extremes), UtilityVector{0.5, 0.8});
  CHECK(e.witness.expert == 1);
  CHECK(e.witness.weight == WeightVector{0, 1});
  const Evaluation k = evaluate(SolutionSpec::kalai_smorodinsky(), UtilityVector{0.9, 0.4});
  CHECK(k.witness.weight == WeightVector{0, 1});
  const Evaluation m =
      evaluate(SolutionSpec::maxmin(WeightSet{{0.25, 0.75}, {0.75, 0.25}}), UtilityVector{0.9, 0.4});
  CHECK(m.witness.weight == WeightVector{0.25, 0.75});
}

TEST_CASE("solve examples") {
  const Problem tri = canonicalize({{1, 0}, {0, 1}, {0.5, 0.5}});
  const SolutionResult n = solve(tri, SolutionSpec::nash(), 8);
  CHECK(n.chosen == Points{{0.5, 0.5}});
  CHECK(n.value == doctest::Approx(0.25));
  CHECK(n.witnesses.size() == 1);

  const SolutionResult k = solve(canonicalize({{2, 1}}), SolutionSpec::kalai_smorodinsky(), 8);
  CHECK(k.chosen == Points{{2, 1}});
  CHECK(k.value == 1.0);

  const Problem sym = symmetric_hull({{2, 1}});
  for (const auto& spec : weighted_product_specs(2)) {
    const SolutionResult r = solve(sym, spec, 8);
    const Permutation swap({1, 0});
    for (const auto& x : r.chosen) {
      CHECK(std::any_of(r.chosen.begin(), r.chosen.end(),
                        [&](const UtilityVector& y) { return approx_equal(y, swap.apply(x)); }));
    }
  }
}

TEST_CASE("solve rejects candidates outside the problem") {
  const Problem s = canonicalize({{1, 1}});
  const Points outside{{1.5, 0.5}};
  CHECK_THROWS_AS(solve(s, SolutionSpec::nash(), outside), InvariantError);
  CHECK_THROWS_AS(solve(s, SolutionSpec::nash(), Points{}), InvariantError);
}

TEST_CASE("chosen set is exactly the tie class of the maximum") {
  std::mt19937_64 rng(41);
  for (std::size_t n : {2u, 3u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Problem s = random_problem(rng, n);
      const Points cands = candidate_points(s, 8);
      const IdealPoint b = ideal_point(s);
      for (const auto& spec : weighted_product_specs(n)) {
        const SolutionResult r = solve(s, spec, cands);
        REQUIRE_FALSE(r.chosen.empty());
        CHECK(r.candidate_count == cands.size());
        for (const auto& c : cands) {
          const double v = eval_objective(spec, normalize(c, b));
          const bool chosen = std::find(r.chosen.begin(), r.chosen.end(), c) != r.chosen.end();
          CHECK(v <= r.value);
          if (chosen) CHECK(v >= r.value - 1e-9 * r.value);
          else CHECK(v < r.value - 1e-9 * r.value);
        }
      }
    }
  }
}

TEST_CASE("lexicographic KS compares order statistics of normalized utilities") {
  const SolutionResult both = lexicographic_ks_solve(canonicalize({{1, 0.5}, {0.5, 1}}), 4);
  CHECK(same_set(both.chosen, {{1, 0.5}, {0.5, 1}}));
  CHECK(lexicographic_ks_solve(canonicalize({{1, 1}}), 4).chosen == Points{{1, 1}});
  // b = (1, 0.6): (1, 0.5) normalizes to (1, 5/6) and beats (0.6, 0.6) -> (0.6, 1).
  const SolutionResult r = lexicographic_ks_solve(canonicalize({{1, 0.5}, {0.6, 0.6}}), 4);
  CHECK(r.chosen == Points{{1, 0.5}});
}

TEST_CASE("counterexample solvers") {
  const Problem s = canonicalize({{1, 0}, {0, 1}});
  const SolutionResult d = dictatorship_solve(s, 0, 4);
  CHECK(d.chosen == Points{{1, 0}});
  CHECK(zero_solve(s).chosen == Points{{0, 0}});
  const SolutionResult w = weak_pareto_solve(canonicalize({{1, 1}}), 4);
  CHECK(w.chosen == candidate_points(canonicalize({{1, 1}}), 4));
  for (const auto& x : w.chosen) CHECK((x[0] == 1.0 || x[1] == 1.0));
  CHECK_THROWS_AS(dictatorship_solve(s, 2, 4), InputError);
}

TEST_CASE("special-case equivalences on random problems") {
  std::mt19937_64 rng(43);
  for (std::size_t n : {2u, 3u}) {
    const SolutionSpec ks = SolutionSpec::kalai_smorodinsky();
    const SolutionSpec nash = SolutionSpec::nash();
    const SolutionSpec ds_full = SolutionSpec::dualself(WeightCollection({WeightSet::simplex(n)}));
    const SolutionSpec ds_uniform = SolutionSpec::dualself(
        WeightCollection({WeightSet::singleton(WeightVector::uniform(n))}));
    const SolutionSpec c_one = SolutionSpec::confidence(ConfidenceCollection::constant_one(n));
    const SolutionSpec c_nash = SolutionSpec::confidence(ConfidenceCollection::nash(n));
    for (int trial = 0; trial < 30; ++trial) {
      const Problem s = random_problem(rng, n);
      const Points cands = candidate_points(s, 16);
      CHECK(solve(s, ds_full, cands).chosen == solve(s, ks, cands).chosen);
      CHECK(solve(s, c_one, cands).chosen == solve(s, ks, cands).chosen);
      CHECK(solve(s, ds_uniform, cands).chosen == solve(s, nash, cands).chosen);
      CHECK(solve(s, c_nash, cands).chosen == solve(s, nash, cands).chosen);
    }
  }
}

TEST_CASE("argmax is scale covariant for normalized families") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> factor(0.2, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Problem s = random_problem(rng, 2);
    const std::vector<double> a{factor(rng), factor(rng)};
    const Points cands = candidate_points(s, 8);
    Points scaled;
    for (const auto& c : cands) scaled.push_back(UtilityVector({a[0] * c[0], a[1] * c[1]}));
    const Problem sa = scale(s, a);
    for (const auto& spec : weighted_product_specs(2)) {
      Points expect;
      for (const auto& x : solve(s, spec, cands).chosen) {
        expect.push_back(UtilityVector({a[0] * x[0], a[1] * x[1]}));
      }
      CHECK(same_set(solve(sa, spec, scaled).chosen, expect));
    }
  }
}

TEST_CASE("objectives are monotone") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> bump(0.01, 0.2);
  auto specs = weighted_product_specs(2);
  specs.push_back(SolutionSpec::utilitarian());
  specs.push_back(SolutionSpec::egalitarian());
  for (int trial = 0; trial < 200; ++trial) {
    const UtilityVector y = random_point(rng, 2, 0.0);
    const UtilityVector x({y[0] + bump(rng), y[1] + bump(rng)});
    for (const auto& spec : specs) CHECK(eval_objective(spec, x) > eval_objective(spec, y));
    // Raising a non-minimal coordinate leaves the egalitarian value unchanged.
    const std::size_t hi = y[0] >= y[1] ? 0 : 1;
    std::vector<double> z = y.values();
    z[hi] += 0.1;
    CHECK(eval_objective(SolutionSpec::egalitarian(), UtilityVector(z)) ==
          eval_objective(SolutionSpec::egalitarian(), y));
  }
}

TEST_CASE("log-domain evaluation matches the direct weighted product") {
  std::mt19937_64 rng(59);
  const WeightVector w{0.3, 0.7};
  const SolutionSpec spec = SolutionSpec::maxmin(WeightSet::singleton(w));
  const SolutionSpec geo = SolutionSpec::maxmin(WeightSet::singleton(WeightVector::uniform(3)));
  for (int trial = 0; trial < 200; ++trial) {
    const UtilityVector x = random_point(rng, 2);
    const double direct = std::pow(x[0], 0.3) * std::pow(x[1], 0.7);
    CHECK(eval_objective(spec, x) == doctest::Approx(direct).epsilon(1e-12));
    const UtilityVector y = random_point(rng, 3);
    CHECK(eval_objective(geo, y) ==
          doctest::Approx(std::cbrt(y[0] * y[1] * y[2])).epsilon(1e-12));
  }
}

TEST_CASE("zero coordinates are the limit of small coordinates") {
  auto specs = weighted_product_specs(2);
  specs.push_back(SolutionSpec::maxmin(WeightSet{{0, 1}, {0.2, 0.8}}));
  specs.push_back(SolutionSpec::dualself(
      WeightCollection({WeightSet::singleton({1, 0}), WeightSet::singleton({0, 1})})));
  for (const auto& spec : specs) {
    const double at_zero = eval_objective(spec, {0.0, 0.7});
    double prev = INFINITY;
    for (double eps : {1e-4, 1e-6, 1e-8}) {
      const double v = eval_objective(spec, {eps, 0.7});
      CHECK(v >= at_zero);
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("scalar and avx2 kernels give identical solutions") {
  if (kernels::avx2() == nullptr) return;
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Problem s = random_problem(rng, 3);
    for (const auto& spec : weighted_product_specs(3)) {
      REQUIRE(kernels::select("scalar"));
      const SolutionResult a = solve(s, spec, 8);
      REQUIRE(kernels::select("avx2"));
      const SolutionResult b = solve(s, spec, 8);
      CHECK(a.chosen == b.chosen);
      CHECK(a.value == b.value);
    }
  }
  kernels::select("auto");
}
