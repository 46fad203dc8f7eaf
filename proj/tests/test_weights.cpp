#include <algorithm>
#include <cmath>
#include <random>

#include "bargain/error.hpp"
#include "bargain/weights.hpp"
#include "doctest.h"

using namespace bargain;

namespace {

std::vector<double> random_g(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-3.0, 0.0);
  std::vector<double> g(n);
  for (auto& v : g) v = u(rng);
  return g;
}

WeightVector random_weight(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& v : w) s += (v = e(rng));
  for (auto& v : w) v /= s;
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) rest -= w[i];
  w[n - 1] = std::max(0.0, rest);
  return WeightVector(w);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("weight vectors live in the simplex") {
  CHECK_NOTHROW(WeightVector({0.25, 0.75}));
  CHECK_THROWS_AS(WeightVector({0.5, 0.6}), InvariantError);
  CHECK_THROWS_AS(WeightVector({1.5, -0.5}), InvariantError);
  CHECK(WeightVector::uniform(4)[2] == 0.25);
}

TEST_CASE("weight sets drop redundant vertices") {
  const WeightSet w{{1, 0}, {0.5, 0.5}, {0, 1}, {0, 1}};
  CHECK(w.vertices() == std::vector<WeightVector>{{0, 1}, {1, 0}});
  CHECK(w.contains({0.3, 0.7}));
  const WeightSet narrow{{0.25, 0.75}, {0.75, 0.25}};
  CHECK_FALSE(narrow.contains({0.9, 0.1}));
  CHECK(WeightSet::simplex(3).vertices().size() == 3);
}

TEST_CASE("min over a weight polytope") {
  const std::vector<double> g{std::log(0.5), std::log(0.8)};
  const InnerMin full = min_linear_over_polytope(WeightSet::simplex(2), g);
  CHECK(full.value == doctest::Approx(std::log(0.5)));
  CHECK(full.argmin == WeightVector{1, 0});

  const InnerMin single = min_linear_over_polytope(WeightSet::singleton({0.5, 0.5}), g);
  CHECK(single.value == doctest::Approx(0.5 * std::log(0.5) + 0.5 * std::log(0.8)));

  const std::vector<double> h{-1, -2};
  const InnerMin seg = min_linear_over_polytope(WeightSet{{0.25, 0.75}, {0.75, 0.25}}, h);
  CHECK(seg.value == doctest::Approx(-1.75));
  CHECK(seg.argmin == WeightVector{0.25, 0.75});
}

TEST_CASE("ties go to the lexicographically smallest vertex") {
  const std::vector<double> g{-1, -1, -1};
  CHECK(min_linear_over_polytope(WeightSet::simplex(3), g).argmin == WeightVector{0, 0, 1});
}

TEST_CASE("zero coordinates of g follow the log-domain conventions") {
  const double ninf = -INFINITY;
  const std::vector<double> g{ninf, -1.0};
  CHECK(weighted_log_sum({0, 1}, g) == -1.0);
  CHECK(weighted_log_sum({0.5, 0.5}, g) == ninf);
  const ConfidenceFunction c(WeightSet{{0, 1}}, {{{0, 0}, 0.0}, {{1, 0}, -1.0}});
  CHECK(min_confidence_over_simplex(c, g).value == doctest::Approx(-1.0));
  const ConfidenceFunction d(WeightSet::simplex(2), {{{0, 0}, 0.0}, {{1, 0}, -1.0}});
  CHECK(min_confidence_over_simplex(d, g).value == ninf);
}

TEST_CASE("min of a confidence function over its support") {
  const std::vector<double> g{std::log(0.5), std::log(0.8)};
  const ConfidenceFunction one(WeightSet::simplex(2), {{{0, 0}, 0.0}});
  CHECK(min_confidence_over_simplex(one, g).value == doctest::Approx(std::log(0.5)));

  const ConfidenceFunction at_center(WeightSet::singleton({0.5, 0.5}), {{{0, 0}, 0.0}});
  CHECK(min_confidence_over_simplex(at_center, g).value ==
        doctest::Approx(0.5 * g[0] + 0.5 * g[1]));

  // log c(w) = |w1 - 0.5|, checked against a grid of step 1e-3.
  const ConfidenceFunction kink(WeightSet::simplex(2),
                                {{{1, 0}, -0.5}, {{-1, 0}, 0.5}});
  const std::vector<double> zero{0, 0};
  const InnerMin m = min_confidence_over_simplex(kink, zero);
  double grid = INFINITY;
  for (int k = 0; k <= 1000; ++k) grid = std::min(grid, std::fabs(k / 1000.0 - 0.5));
  CHECK(m.value == doctest::Approx(grid).epsilon(1e-12));
  CHECK(m.value == doctest::Approx(0.0));
  CHECK(m.argmin[0] == doctest::Approx(0.5));
}

TEST_CASE("single zero piece reduces to the vertex scan") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {2u, 3u}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<WeightVector> verts;
      for (int k = 0; k < 3; ++k) verts.push_back(random_weight(rng, n));
      const WeightSet w(verts);
      const ConfidenceFunction c(w, {{std::vector<double>(n, 0.0), 0.0}});
      const auto g = random_g(rng, n);
      CHECK(min_confidence_over_simplex(c, g).value ==
            doctest::Approx(min_linear_over_polytope(w, g).value).epsilon(1e-12));
    }
  }
}

TEST_CASE("vertex scan agrees with a simplex grid restricted to W") {
  std::mt19937_64 rng(19);
  const int r = 200;
  const auto grid = simplex_grid(2, r);
  for (int trial = 0; trial < 30; ++trial) {
    const WeightSet w{random_weight(rng, 2), random_weight(rng, 2)};
    const auto g = random_g(rng, 2);
    double best = INFINITY;
    for (const auto& p : grid) {
      if (w.contains(p)) best = std::min(best, dot(p.coords(), g));
    }
    const double lip = std::fabs(g[0]) + std::fabs(g[1]);
    const double exact = min_linear_over_polytope(w, g).value;
    if (std::isfinite(best)) {
      CHECK(exact <= best + 1e-12);
      CHECK(best - exact <= 2 * lip / r);
    }
  }
}

TEST_CASE("multi-piece LP agrees with a fine simplex grid") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int r = 2000;
  const auto grid = simplex_grid(2, r);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<AffinePiece> pieces;
    for (int k = 0; k < 3; ++k) pieces.push_back({{u(rng), u(rng)}, u(rng)});
    const ConfidenceFunction c(WeightSet::simplex(2), pieces);
    const auto g = random_g(rng, 2);
    double best = INFINITY;
    for (const auto& p : grid) best = std::min(best, c.log_value(p.coords()) + dot(p.coords(), g));
    double lip = std::fabs(g[0]) + std::fabs(g[1]);
    for (const auto& p : pieces) lip += std::fabs(p.slope[0]) + std::fabs(p.slope[1]);
    const InnerMin m = min_confidence_over_simplex(c, g);
    CHECK(m.value <= best + 1e-12);
    CHECK(best - m.value <= 2 * lip / r);
    CHECK(c.log_value(m.argmin.coords()) + dot(m.argmin.coords(), g) ==
          doctest::Approx(m.value).epsilon(1e-9));
  }
}

TEST_CASE("normalize collection") {
  const ConfidenceCollection e({ConfidenceFunction(WeightSet::simplex(2), {{{0, 0}, 1.0}})});
  const auto ne = normalize_collection(e);
  CHECK(ne.shift == doctest::Approx(1.0));
  CHECK(ne.collection.functions().front().pieces().front().intercept == doctest::Approx(0.0));

  const auto one = ConfidenceCollection::constant_one(2);
  const auto n1 = normalize_collection(one);
  CHECK(n1.shift == 0.0);
  CHECK(n1.collection.functions() == one.functions());

  const ConfidenceCollection two({ConfidenceFunction(WeightSet::simplex(2), {{{0, 0}, 2.0}}),
                                  ConfidenceFunction(WeightSet::simplex(2), {{{0, 0}, 5.0}})});
  const auto n2 = normalize_collection(two);
  CHECK(n2.shift == doctest::Approx(5.0));
  CHECK(n2.attained_by == 1);
  CHECK(n2.collection.functions()[0].pieces()[0].intercept == doctest::Approx(-3.0));
  CHECK(n2.collection.functions()[1].pieces()[0].intercept == doctest::Approx(0.0));
}

TEST_CASE("normalized collections satisfy the normalization") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ConfidenceFunction> fs;
    for (int k = 0; k < 2; ++k) {
      std::vector<AffinePiece> pieces;
      for (int j = 0; j < 2; ++j) pieces.push_back({{u(rng), u(rng), u(rng)}, u(rng)});
      fs.emplace_back(WeightSet::simplex(3), pieces);
    }
    const auto nc = normalize_collection(ConfidenceCollection(fs, true));
    CHECK(std::fabs(nc.collection.normalization_level()) <= 1e-9);
    CHECK(nc.collection.is_normalized());
  }
}

TEST_CASE("symmetrize closes collections under permutations") {
  const auto two = symmetrize(WeightCollection({WeightSet::singleton({0.7, 0.3})}));
  CHECK(two.sets().size() == 2);
  CHECK(std::find(two.sets().begin(), two.sets().end(),
                  WeightSet::singleton({0.3, 0.7})) != two.sets().end());
  CHECK(symmetrize(two).sets() == two.sets());
  const auto three = symmetrize(WeightCollection({WeightSet::singleton({1, 0, 0})}));
  CHECK(three.sets().size() == 3);
  CHECK(three.is_symmetric());
}

TEST_CASE("permuted g permutes the argmin of symmetrized members") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const ConfidenceFunction f(WeightSet{random_weight(rng, 3), random_weight(rng, 3),
                                         random_weight(rng, 3)},
                               {{{u(rng), u(rng), u(rng)}, 0.0}, {{u(rng), u(rng), u(rng)}, 0.1}});
    const auto g = random_g(rng, 3);
    const double base = min_confidence_over_simplex(f, g).value;
    for (const auto& p : all_permutations(3)) {
      // (pi g) . (pi w) = g . w, so the pi-image member evaluated at pi g
      // reproduces the original value.
      const auto pg = p.apply(std::span<const double>(g));
      CHECK(min_confidence_over_simplex(f.permuted(p), pg).value ==
            doctest::Approx(base).epsilon(1e-10));
    }
  }
}

TEST_CASE("simplex grid") {
  CHECK(simplex_grid(2, 2) == std::vector<WeightVector>{{0, 1}, {0.5, 0.5}, {1, 0}});
  CHECK(simplex_grid(2, 1) == std::vector<WeightVector>{{0, 1}, {1, 0}});
  CHECK(simplex_grid(3, 2).size() == 6);
  CHECK_THROWS_AS(simplex_grid(2, 0), InputError);
}
