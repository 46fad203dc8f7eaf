// Acceptance run: one PASS/FAIL line per criterion, with the tolerances,
// sample sizes and time budgets fixed below. Exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "bargain/axioms.hpp"
#include "bargain/corpus.hpp"
#include "bargain/oracle.hpp"
#include "bargain/tolerance.hpp"

using namespace bargain;

namespace {

constexpr double kTie = 1e-9;
constexpr int kAxiomResolution = 8;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = body();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= budget_s) {
    o.ok = false;
    o.detail += "; over time budget";
  }
  if (!o.ok) ++failures;
  std::printf("criterion %d: %s  %s (%s) [%.2f s of %.0f s]\n", id, o.ok ? "PASS" : "FAIL", title,
              o.detail.c_str(), secs, budget_s);
  std::fflush(stdout);
}

// conv of the permutations of t e_i + (1 - t) u.
WeightSet shrunk_simplex(std::size_t n, double t) {
  std::vector<WeightVector> v;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> w(n, (1 - t) / static_cast<double>(n));
    w[i] += t;
    v.emplace_back(w);
  }
  return WeightSet(v);
}

SolutionSpec dualself_point(std::size_t n) {
  const WeightVector w0 = n == 2 ? WeightVector{0.7, 0.3} : WeightVector{0.6, 0.3, 0.1};
  return SolutionSpec::dualself(WeightCollection({WeightSet::singleton(w0)}, true));
}

SolutionSpec dualself_segment(std::size_t n) {
  const WeightSet seg = n == 2 ? WeightSet{{0.6, 0.4}, {0.8, 0.2}}
                               : WeightSet{{0.5, 0.3, 0.2}, {0.6, 0.3, 0.1}};
  return SolutionSpec::dualself(WeightCollection({seg}, true));
}

// log c(w) = max_k (w_k - 1/n); for n = 2 this is |w_1 - 1/2|.
SolutionSpec corner_confidence(std::size_t n) {
  std::vector<AffinePiece> pieces;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> a(n, 0.0);
    a[k] = 1.0;
    pieces.push_back({a, -1.0 / static_cast<double>(n)});
  }
  return SolutionSpec::confidence(
      ConfidenceCollection({ConfidenceFunction(WeightSet::simplex(n), pieces)}));
}

struct NamedSpec {
  std::string label;
  std::function<SolutionSpec(std::size_t)> make;
};

std::vector<NamedSpec> curated_specs() {
  return {
      {"nash", [](std::size_t) { return SolutionSpec::nash(); }},
      {"ks", [](std::size_t) { return SolutionSpec::kalai_smorodinsky(); }},
      {"maxmin(simplex)", [](std::size_t n) { return SolutionSpec::maxmin(WeightSet::simplex(n)); }},
      {"maxmin(t=0.5)", [](std::size_t n) { return SolutionSpec::maxmin(shrunk_simplex(n, 0.5)); }},
      {"maxmin(t=0.2)", [](std::size_t n) { return SolutionSpec::maxmin(shrunk_simplex(n, 0.2)); }},
      {"dualself(point)", dualself_point},
      {"dualself(segment)", dualself_segment},
      {"confidence(corner)", corner_confidence},
  };
}

std::vector<NamedSpec> maxmin_specs() {
  auto all = curated_specs();
  return {all[2], all[3], all[4]};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const Corpus& corpus() {
  static const Corpus c = build_corpus();
  return c;
}

Outcome special_cases() {
  const int res = 64;
  std::size_t mismatches = 0, total = 0;
  for (const Problem& s : corpus().random) {
    const std::size_t n = s.dim();
    const auto cands = candidate_points(s, res);
    const auto ks = solve(s, SolutionSpec::kalai_smorodinsky(), cands).chosen;
    const auto nash = solve(s, SolutionSpec::nash(), cands).chosen;
    const std::pair<SolutionSpec, const std::vector<UtilityVector>*> pairs[] = {
        {SolutionSpec::dualself(WeightCollection({WeightSet::simplex(n)})), &ks},
        {SolutionSpec::dualself(WeightCollection({WeightSet::singleton(WeightVector::uniform(n))})),
         &nash},
        {SolutionSpec::confidence(ConfidenceCollection::constant_one(n)), &ks},
        {SolutionSpec::confidence(ConfidenceCollection::nash(n)), &nash},
    };
    for (const auto& [spec, expect] : pairs) {
      ++total;
      if (!same_point_set(solve(s, spec, cands).chosen, *expect, kTie)) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(total) + " comparisons, " + std::to_string(mismatches) +
                               " mismatches"};
}

Outcome run_axioms(const std::vector<NamedSpec>& specs, const std::vector<std::string>& axioms,
                   std::size_t* fails_out = nullptr, std::string* first_fail = nullptr) {
  std::size_t fails = 0, runs = 0;
  std::string first;
  for (const auto& ns : specs) {
    for (std::size_t n : {2u, 3u}) {
      const Solver f = make_solver(ns.make(n));
      for (const auto& a : axioms) {
        const AxiomReport r = run_on_corpus(f, a, corpus(), kAxiomResolution, n);
        ++runs;
        if (r.verdict == Verdict::fail) {
          ++fails;
          if (first.empty()) first = ns.label + " n=" + std::to_string(n) + " " + a;
        }
      }
    }
  }
  if (fails_out) *fails_out = fails;
  if (first_fail) *first_fail = first;
  std::string d = std::to_string(runs) + " spec/dim/axiom runs, " + std::to_string(fails) +
                  " with fail verdicts";
  if (!first.empty()) d += ", first: " + first;
  return {fails == 0, d};
}

Outcome axiom_suite() {
  return run_axioms(curated_specs(),
                    {"intermediate_pareto", "scale_invariance", "anonymity", "weak_iia"});
}

Outcome matrix() {
  const IndependenceMatrix m = independence_matrix(corpus(), kAxiomResolution);
  std::string d;
  for (std::size_t r = 0; r < m.cells.size(); ++r) {
    std::size_t fails = 0;
    for (const auto& c : m.cells[r]) fails += c.verdict == Verdict::fail;
    d += (r ? ", " : "") + m.solutions[r] + " fails " + std::to_string(fails);
  }
  return {m.diagonal_fail(), d};
}

Outcome boundaries() {
  std::string d;
  bool ok = true;

  std::size_t timing_fails = 0, ci_fails = 0;
  std::string first_ci;
  run_axioms(maxmin_specs(), {"independence_of_timing"}, &timing_fails);
  run_axioms(maxmin_specs(), {"combination_improvement"}, &ci_fails, &first_ci);
  ok = ok && timing_fails == 0 && ci_fails == 0;
  d += "maxmin timing fails " + std::to_string(timing_fails) + ", combination fails " +
       std::to_string(ci_fails);
  if (!first_ci.empty()) d += " (first: " + first_ci + ")";

  const Solver extremes = make_solver(
      SolutionSpec::dualself(WeightCollection({WeightSet::singleton({1, 0})}, true)));
  const AxiomReport ci =
      check_combination_improvement(extremes, symmetric_hull({{1, 0.25}}), kAxiomResolution);
  const bool ci_witness = ci.verdict == Verdict::fail && ci.witness.contains("product") &&
                          replay(extremes, ci).verdict == Verdict::fail;
  ok = ok && ci_witness;
  d += "; extreme dualself combination witness " + std::string(ci_witness ? "found" : "missing");

  const Solver curved = make_solver(corner_confidence(2));
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  bool timing_witness = false;
  for (int k = 0; k < 200 && !timing_witness; ++k) {
    const Problem s = canonicalize({{1, u(rng)}, {u(rng), 1}});
    const AxiomReport r = check_independence_of_timing(curved, s, 2, kAxiomResolution);
    timing_witness = r.verdict == Verdict::fail && replay(curved, r).verdict == Verdict::fail;
  }
  ok = ok && timing_witness;
  d += "; curved confidence timing witness " + std::string(timing_witness ? "found" : "missing");
  return {ok, d};
}

Outcome representation() {
  OracleConfig config;
  config.eps_bis = 1e-6;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  bool brackets = true;
  const auto specs = curated_specs();
  for (const NamedSpec* ns : {&specs[0], &specs[1], &specs[3], &specs[5]}) {
    for (std::size_t n : {2u, 3u}) {
      const SolutionSpec spec = ns->make(n);
      for (int k = 0; k < 50; ++k) {
        std::vector<double> x(n);
        for (auto& v : x) v = 1.0 - u(rng);  // (0, 1]
        const UtilityVector xv(x);
        const VDefinition v = v_from_definition(spec, xv, config);
        brackets = brackets && v.bracket_ok;
        if (v.bracket_ok) worst = std::max(worst, std::fabs(v.value - degree_one_objective(spec, xv)));
      }
    }
  }
  return {brackets && worst <= 1e-5,
          "max |V - objective| " + fmt(worst) + (brackets ? "" : ", bracket failures")};
}

Outcome claims() {
  const std::size_t samples = 500;
  double trans = 0.0, homog = 0.0, concave = 0.0;
  for (const auto& ns : curated_specs()) {
    for (std::size_t n : {2u, 3u}) {
      const SolutionSpec spec = ns.make(n);
      trans = std::max(trans, check_translation_invariance(spec, n, samples).worst_residual);
      const Family f = spec.family();
      if (f == Family::maxmin_nash || f == Family::dualself_nash) {
        homog = std::max(homog, check_i_homogeneity(spec, n, samples).worst_residual);
      }
      if (f == Family::maxmin_nash) {
        concave = std::min(concave, check_i_concavity(spec, n, samples).worst_residual);
      }
    }
  }
  const double curved = check_i_homogeneity(corner_confidence(2), 2, samples).worst_residual;
  const double disjoint =
      check_i_concavity(SolutionSpec::dualself(WeightCollection(
                            {WeightSet::singleton({1, 0}), WeightSet::singleton({0, 1})})),
                        2, samples)
          .worst_residual;
  const bool ok = trans <= 1e-9 && homog <= 1e-9 && concave >= -1e-9 && curved > 1e-9 &&
                  disjoint < -1e-9;
  return {ok, "translation " + fmt(trans) + ", homogeneity " + fmt(homog) + ", concavity " +
                  fmt(concave) + "; curved confidence homogeneity " + fmt(curved) +
                  ", disjoint dualself concavity " + fmt(disjoint)};
}

Outcome lp_kernel() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> slope(-1.0, 1.0), inter(-0.5, 0.5), gcoord(-3.0, 0.0);
  std::uniform_int_distribution<int> npieces(2, 4);
  std::size_t bad = 0;
  double worst_ratio = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = k < 50 ? 2 : 3;
    const int res = n == 2 ? 2000 : 200;
    std::vector<AffinePiece> pieces;
    for (int p = npieces(rng); p > 0; --p) {
      std::vector<double> a(n);
      for (auto& v : a) v = slope(rng);
      pieces.push_back({a, inter(rng)});
    }
    const ConfidenceFunction c(WeightSet::simplex(n), pieces);
    std::vector<double> g(n);
    for (auto& v : g) v = gcoord(rng);

    const double lp = min_confidence_over_simplex(c, g).value;
    double grid = INFINITY;
    for (const auto& w : simplex_grid(n, res)) {
      double v = c.log_value(w.values());
      for (std::size_t i = 0; i < n; ++i) v += g[i] * w[i];
      grid = std::min(grid, v);
    }
    // Lipschitz constant in the max norm: the largest l1 norm of a gradient.
    double lip = 0.0;
    for (const auto& p : pieces) {
      double l1 = 0.0;
      for (std::size_t i = 0; i < n; ++i) l1 += std::fabs(p.slope[i] + g[i]);
      lip = std::max(lip, l1);
    }
    const double bound = 2 * lip / res;
    worst_ratio = std::max(worst_ratio, std::fabs(grid - lp) / bound);
    if (std::fabs(grid - lp) > bound) ++bad;
  }
  return {bad == 0, "100 instances, " + std::to_string(bad) + " outside 2L/r, worst gap/bound " +
                        fmt(worst_ratio)};
}

Outcome convergence() {
  std::vector<const Problem*> problems;
  for (const auto& s : corpus().random) problems.push_back(&s);
  for (const auto& s : corpus().symmetric) problems.push_back(&s);
  for (const auto& s : corpus().equal_ideal) problems.push_back(&s);
  double worst_value = 0.0, worst_dist = 0.0;
  std::size_t value_bad = 0, cover_bad = 0;
  for (const Problem* s : problems) {
    for (const SolutionSpec& spec : {SolutionSpec::nash(), SolutionSpec::kalai_smorodinsky(),
                                     SolutionSpec::maxmin(WeightSet::simplex(s->dim()))}) {
      const SolutionResult lo = solve(*s, spec, 64), hi = solve(*s, spec, 128);
      const double dv = std::fabs(hi.value - lo.value);
      worst_value = std::max(worst_value, dv);
      if (!(dv < 1e-2)) ++value_bad;
      for (const auto& x : lo.chosen) {
        double d = INFINITY;
        for (const auto& y : hi.chosen) d = std::min(d, max_norm_distance(x, y));
        worst_dist = std::max(worst_dist, d);
        if (d > 2.0 / 64) {
          ++cover_bad;
          break;
        }
      }
    }
  }
  return {value_bad == 0 && cover_bad == 0,
          std::to_string(problems.size()) + " problems x 3 specs, max value change " +
              fmt(worst_value) + ", max distance to a 128-point " + fmt(worst_dist)};
}

}  // namespace

int main() {
  criterion(1, "special-case equivalences", 60, special_cases);
  criterion(2, "axiom suite for the curated specs", 120, axiom_suite);
  criterion(3, "independence matrix is diagonal-fail", 120, matrix);
  criterion(4, "timing and combination boundaries", 60, boundaries);
  criterion(5, "representation round trip", 120, representation);
  criterion(6, "structural claims of I", 60, claims);
  criterion(7, "LP kernel against grid search", 60, lp_kernel);
  criterion(8, "convergence under resolution doubling", 600, convergence);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
