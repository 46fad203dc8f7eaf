#include "bargain/axioms.hpp"

#include <algorithm>
#include <cmath>

#include "bargain/error.hpp"
#include "bargain/io.hpp"
#include "bargain/tolerance.hpp"

namespace bargain {

using nlohmann::json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::inconclusive_pass: return "inconclusive_pass";
  }
  return "unknown";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::inconclusive,
                    Verdict::inconclusive_pass}) {
    if (to_string(v) == s) return v;
  }
  throw InputError("unknown verdict '" + s + "'");
}

json to_json(const AxiomReport& r) {
  return json{{"solution", r.solution},
              {"axiom", r.axiom},
              {"verdict", to_string(r.verdict)},
              {"witness", r.witness}};
}

bool same_point_set(std::span<const UtilityVector> a, std::span<const UtilityVector> b,
                    double tol) {
  auto covered = [tol](std::span<const UtilityVector> from, std::span<const UtilityVector> to) {
    return std::all_of(from.begin(), from.end(), [&](const UtilityVector& x) {
      return std::any_of(to.begin(), to.end(),
                         [&](const UtilityVector& y) { return approx_equal(x, y, tol); });
    });
  };
  return covered(a, b) && covered(b, a);
}

namespace {

using Points = std::vector<UtilityVector>;

bool member(const UtilityVector& x, std::span<const UtilityVector> set) {
  return std::any_of(set.begin(), set.end(),
                     [&](const UtilityVector& y) { return approx_equal(x, y, kTieTol); });
}

// Points of a missing from b.
Points missing(std::span<const UtilityVector> a, std::span<const UtilityVector> b) {
  Points out;
  for (const auto& x : a) {
    if (!member(x, b)) out.push_back(x);
  }
  return out;
}

AxiomReport report(const Solver& f, std::string axiom, Verdict v, json witness) {
  return AxiomReport{std::move(axiom), f.name, v, std::move(witness)};
}

json base_inputs(const Problem& s, int resolution) {
  return json{{"problem", io::to_json(s)}, {"resolution", resolution}};
}

Points scaled(std::span<const UtilityVector> points, std::span<const double> a) {
  Points out;
  out.reserve(points.size());
  for (const auto& p : points) {
    std::vector<double> c(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) c[i] = a[i] * p[i];
    out.emplace_back(std::move(c));
  }
  return out;
}

Points powered(std::span<const UtilityVector> points, int m) {
  Points out;
  out.reserve(points.size());
  for (const auto& p : points) {
    std::vector<double> c(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) c[i] = std::pow(p[i], m);
    out.emplace_back(std::move(c));
  }
  return out;
}

// Checks the relation F(t) = phi(F(s)) where t's candidates are phi(C_s).
AxiomReport covariance_check(const Solver& f, const std::string& axiom, const Problem& s,
                             const Problem& t, const Points& cands, const Points& mapped,
                             const std::function<Points(const Points&)>& phi,
                             json inputs) {
  const SolutionResult base = f.run(s, cands);
  const SolutionResult image = f.run(t, mapped);
  const Points expect = phi(base.chosen);
  json w{{"inputs", std::move(inputs)},
         {"chosen", io::to_json(base.chosen)},
         {"image_chosen", io::to_json(image.chosen)},
         {"expected_image", io::to_json(expect)}};
  if (same_point_set(image.chosen, expect, kTieTol)) {
    return report(f, axiom, Verdict::pass, std::move(w));
  }
  w["unexpected"] = io::to_json(missing(image.chosen, expect));
  w["absent"] = io::to_json(missing(expect, image.chosen));
  return report(f, axiom, Verdict::fail, std::move(w));
}

}  // namespace

AxiomReport check_intermediate_pareto(const Solver& f, const Problem& s, int resolution) {
  const Points cands = candidate_points(s, resolution);
  const SolutionResult r = f.run(s, cands);
  json w{{"inputs", base_inputs(s, resolution)}, {"chosen", io::to_json(r.chosen)}};

  // Clause 1: no point of S strictly dominates a chosen point. Generators
  // are tried first since they dominate everything else.
  for (const auto& x : r.chosen) {
    for (const Points* pool : {&s.generators(), &cands}) {
      for (const auto& y : *pool) {
        if (strictly_dominates(y, x)) {
          w["clause"] = "strictly dominated chosen point";
          w["point"] = io::to_json(x);
          w["dominator"] = io::to_json(y);
          return report(f, "intermediate_pareto", Verdict::fail, std::move(w));
        }
      }
    }
  }
  // Clause 2: some chosen point admits no weak improvement among candidates.
  const bool some_undominated = std::any_of(r.chosen.begin(), r.chosen.end(), [&](const auto& x) {
    return std::none_of(cands.begin(), cands.end(), [&](const UtilityVector& y) {
      return weakly_dominates(y, x) && !approx_equal(y, x);
    });
  });
  if (!some_undominated) {
    w["clause"] = "every chosen point is weakly improvable";
    return report(f, "intermediate_pareto", Verdict::fail, std::move(w));
  }
  return report(f, "intermediate_pareto", Verdict::pass, std::move(w));
}

AxiomReport check_scale_invariance(const Solver& f, const Problem& s,
                                   std::span<const double> a, int resolution) {
  const std::vector<double> factors(a.begin(), a.end());
  const Points cands = candidate_points(s, resolution);
  json inputs = base_inputs(s, resolution);
  inputs["scale"] = factors;
  return covariance_check(
      f, "scale_invariance", s, scale(s, factors), cands, scaled(cands, factors),
      [&](const Points& p) { return scaled(p, factors); }, std::move(inputs));
}

AxiomReport check_homogeneity(const Solver& f, const Problem& s, double alpha,
                              int resolution) {
  const std::vector<double> factors(s.dim(), alpha);
  const Points cands = candidate_points(s, resolution);
  json inputs = base_inputs(s, resolution);
  inputs["alpha"] = alpha;
  return covariance_check(
      f, "homogeneity", s, scale(s, factors), cands, scaled(cands, factors),
      [&](const Points& p) { return scaled(p, factors); }, std::move(inputs));
}

AxiomReport check_anonymity(const Solver& f, const Problem& s, int resolution) {
  if (!is_symmetric(s)) throw InvariantError("anonymity check requires a symmetric problem");
  const Points cands = candidate_points(s, resolution);
  const SolutionResult r = f.run(s, cands);
  json w{{"inputs", base_inputs(s, resolution)}, {"chosen", io::to_json(r.chosen)}};
  for (const auto& p : all_permutations(s.dim())) {
    for (const auto& x : r.chosen) {
      const UtilityVector px = p.apply(x);
      if (!member(px, r.chosen)) {
        w["point"] = io::to_json(x);
        w["permuted"] = io::to_json(px);
        return report(f, "anonymity", Verdict::fail, std::move(w));
      }
    }
  }
  return report(f, "anonymity", Verdict::pass, std::move(w));
}

namespace {

AxiomReport contraction_check(const Solver& f, const std::string& axiom, const Problem& s,
                              const Problem& s_prime, int resolution) {
  Points cands = candidate_points(s, resolution);
  for (auto& p : candidate_points(s_prime, resolution)) cands.push_back(std::move(p));
  sort_unique(cands);
  Points inner;
  for (const auto& c : cands) {
    if (contains(s_prime, c)) inner.push_back(c);
  }

  json inputs = base_inputs(s, resolution);
  inputs["problem_prime"] = io::to_json(s_prime);
  const SolutionResult outer = f.run(s, cands);
  Points kept;
  for (const auto& x : outer.chosen) {
    if (contains(s_prime, x)) kept.push_back(x);
  }
  json w{{"inputs", std::move(inputs)},
         {"chosen", io::to_json(outer.chosen)},
         {"chosen_in_prime", io::to_json(kept)}};
  if (kept.empty()) {
    w["reason"] = "no chosen point of S lies in S'";
    return report(f, axiom, Verdict::inconclusive, std::move(w));
  }
  const SolutionResult contracted = f.run(s_prime, inner);
  w["prime_chosen"] = io::to_json(contracted.chosen);
  if (same_point_set(contracted.chosen, kept, kTieTol)) {
    return report(f, axiom, Verdict::pass, std::move(w));
  }
  w["unexpected"] = io::to_json(missing(contracted.chosen, kept));
  w["absent"] = io::to_json(missing(kept, contracted.chosen));
  return report(f, axiom, Verdict::fail, std::move(w));
}

}  // namespace

AxiomReport check_weak_iia(const Solver& f, const Problem& s, const Problem& s_prime,
                           int resolution) {
  if (!is_equal_ideal(s) || !is_equal_ideal(s_prime)) {
    throw InvariantError("weak IIA check requires problems with equal ideal coordinates");
  }
  if (!is_subset(s_prime, s)) throw InvariantError("weak IIA check requires S' inside S");
  return contraction_check(f, "weak_iia", s, s_prime, resolution);
}

AxiomReport check_iia(const Solver& f, const Problem& s, const Problem& s_prime,
                      int resolution) {
  if (!is_subset(s_prime, s)) throw InvariantError("IIA check requires S' inside S");
  return contraction_check(f, "iia", s, s_prime, resolution);
}

AxiomReport check_independence_of_timing(const Solver& f, const Problem& s, int m,
                                         int resolution) {
  if (m < 1) throw InvariantError("independence of timing needs m >= 1");
  const Points cands = candidate_points(s, resolution);
  json inputs = base_inputs(s, resolution);
  inputs["m"] = m;
  return covariance_check(
      f, "independence_of_timing", s, power(s, m), cands, powered(cands, m),
      [m](const Points& p) { return powered(p, m); }, std::move(inputs));
}

AxiomReport check_combination_improvement(const Solver& f, const Problem& s,
                                          int resolution) {
  if (!is_equal_ideal(s)) {
    throw InvariantError("combination improvement requires equal ideal coordinates");
  }
  const Points cands = candidate_points(s, resolution);
  const SolutionResult r = f.run(s, cands);
  const Problem st = star(s);
  Points star_cands = candidate_points(st, resolution);
  for (std::size_t a = 0; a < r.chosen.size(); ++a) {
    for (std::size_t b = a; b < r.chosen.size(); ++b) {
      star_cands.push_back(hadamard(r.chosen[a], r.chosen[b]));
    }
  }
  sort_unique(star_cands);
  const SolutionResult rs = f.run(st, star_cands);
  json w{{"inputs", base_inputs(s, resolution)},
         {"chosen", io::to_json(r.chosen)},
         {"star_chosen", io::to_json(rs.chosen)}};
  for (std::size_t a = 0; a < r.chosen.size(); ++a) {
    for (std::size_t b = a; b < r.chosen.size(); ++b) {
      const UtilityVector xy = hadamard(r.chosen[a], r.chosen[b]);
      const bool improved = std::any_of(rs.chosen.begin(), rs.chosen.end(), [&](const auto& z) {
        for (std::size_t i = 0; i < z.dim(); ++i) {
          if (!approx_ge(z[i], xy[i], kTieTol)) return false;
        }
        return true;
      });
      if (!improved) {
        w["x"] = io::to_json(r.chosen[a]);
        w["y"] = io::to_json(r.chosen[b]);
        w["product"] = io::to_json(xy);
        return report(f, "combination_improvement", Verdict::fail, std::move(w));
      }
    }
  }
  return report(f, "combination_improvement", Verdict::pass, std::move(w));
}

PerturbationFamily additive_perturbation(const Problem& s) {
  return [s](double delta) {
    Points out;
    for (const auto& g : s.generators()) {
      std::vector<double> c = g.values();
      for (auto& v : c) v += delta;
      out.emplace_back(std::move(c));
    }
    return canonicalize(out);
  };
}

AxiomReport check_continuity(const Solver& f, const Problem& s,
                             const PerturbationFamily& family, int resolution) {
  std::vector<Problem> schedule;
  std::vector<double> deltas;
  for (int k = 1; k <= 12; ++k) {
    deltas.push_back(std::ldexp(1.0, -k));
    schedule.push_back(family(deltas.back()));
  }
  return check_continuity(f, s, schedule, deltas, resolution);
}

AxiomReport check_continuity(const Solver& f, const Problem& s,
                             std::span<const Problem> schedule,
                             std::span<const double> deltas, int resolution) {
  if (schedule.empty() || schedule.size() != deltas.size()) {
    throw InputError("continuity schedule and deltas must be nonempty and of equal length");
  }
  json inputs = base_inputs(s, resolution);
  json sched = json::array();
  for (const auto& p : schedule) sched.push_back(io::to_json(p));
  inputs["schedule"] = sched;
  inputs["deltas"] = std::vector<double>(deltas.begin(), deltas.end());

  Points chain;
  for (const auto& sk : schedule) {
    const Points cands = candidate_points(sk, resolution);
    const SolutionResult r = f.run(sk, cands);
    if (chain.empty()) {
      chain.push_back(r.chosen.front());
      continue;
    }
    const UtilityVector& last = chain.back();
    const auto nearest = std::min_element(
        r.chosen.begin(), r.chosen.end(), [&](const UtilityVector& a, const UtilityVector& b) {
          return max_norm_distance(a, last) < max_norm_distance(b, last);
        });
    chain.push_back(*nearest);
  }
  const SolutionResult limit = f.run(s, candidate_points(s, resolution));
  double gap = INFINITY;
  for (const auto& x : limit.chosen) gap = std::min(gap, max_norm_distance(x, chain.back()));
  const double bound = 10 * kTieTol + deltas.back();

  json w{{"inputs", std::move(inputs)},
         {"chain", io::to_json(chain)},
         {"limit_chosen", io::to_json(limit.chosen)},
         {"gap", gap},
         {"bound", bound}};
  return report(f, "continuity", gap > bound ? Verdict::fail : Verdict::inconclusive_pass,
                std::move(w));
}

AxiomReport replay(const Solver& f, const AxiomReport& r) {
  const json& in = r.witness.at("inputs");
  const Problem s = io::problem_from_json(in.at("problem"));
  const int res = in.at("resolution").get<int>();
  const std::string& a = r.axiom;
  if (a == "intermediate_pareto") return check_intermediate_pareto(f, s, res);
  if (a == "scale_invariance") {
    const auto factors = in.at("scale").get<std::vector<double>>();
    return check_scale_invariance(f, s, factors, res);
  }
  if (a == "homogeneity") return check_homogeneity(f, s, in.at("alpha").get<double>(), res);
  if (a == "anonymity") return check_anonymity(f, s, res);
  if (a == "weak_iia") {
    return check_weak_iia(f, s, io::problem_from_json(in.at("problem_prime")), res);
  }
  if (a == "iia") return check_iia(f, s, io::problem_from_json(in.at("problem_prime")), res);
  if (a == "independence_of_timing") {
    return check_independence_of_timing(f, s, in.at("m").get<int>(), res);
  }
  if (a == "combination_improvement") return check_combination_improvement(f, s, res);
  if (a == "continuity") {
    std::vector<Problem> schedule;
    for (const auto& p : in.at("schedule")) schedule.push_back(io::problem_from_json(p));
    const auto deltas = in.at("deltas").get<std::vector<double>>();
    return check_continuity(f, s, schedule, deltas, res);
  }
  throw InputError("cannot replay unknown axiom '" + a + "'");
}

AxiomReport aggregate(const std::string& axiom, const std::string& solution,
                      std::span<const AxiomReport> reports) {
  AxiomReport out{axiom, solution, Verdict::inconclusive, json::object()};
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::fail: return 3;
      case Verdict::pass: return 2;
      case Verdict::inconclusive_pass: return 1;
      case Verdict::inconclusive: return 0;
    }
    return 0;
  };
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& r : reports) {
    counts[rank(r.verdict)]++;
    if (rank(r.verdict) > rank(out.verdict)) {
      out.verdict = r.verdict;
      out.witness = r.witness;
    }
  }
  out.witness["counts"] = {{"fail", counts[3]},
                           {"pass", counts[2]},
                           {"inconclusive_pass", counts[1]},
                           {"inconclusive", counts[0]}};
  return out;
}

}  // namespace bargain
