#pragma once

// Axioms as executable properties of a black-box solver.
//
// Every check derives the candidate sets of the derived problems from the
// parent's candidate set through the same bijection that relates the
// problems (a*C for scaling, C^m for powers, C intersected with S' for
// contractions), so set comparisons between two solves are meaningful.
//
// A failing report carries a witness holding every input needed to rerun
// the check (see replay) plus the offending points.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bargain/corpus.hpp"
#include "bargain/problem.hpp"
#include "bargain/solutions.hpp"
#include "json.hpp"

namespace bargain {

enum class Verdict { pass, fail, inconclusive, inconclusive_pass };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct AxiomReport {
  std::string axiom;
  std::string solution;
  Verdict verdict = Verdict::pass;
  nlohmann::json witness;  // {"inputs": {...}, ...evidence}
};

nlohmann::json to_json(const AxiomReport& r);

/// Set equality up to the relative tie tolerance.
bool same_point_set(std::span<const UtilityVector> a, std::span<const UtilityVector> b,
                    double tol = 1e-9);

AxiomReport check_intermediate_pareto(const Solver& f, const Problem& s, int resolution);
AxiomReport check_scale_invariance(const Solver& f, const Problem& s,
                                   std::span<const double> a, int resolution);
AxiomReport check_homogeneity(const Solver& f, const Problem& s, double alpha,
                              int resolution);
/// Throws InvariantError when s is not symmetric.
AxiomReport check_anonymity(const Solver& f, const Problem& s, int resolution);
/// Throws InvariantError unless both problems have equal ideal coordinates
/// and s_prime is contained in s.
AxiomReport check_weak_iia(const Solver& f, const Problem& s, const Problem& s_prime,
                           int resolution);
/// Throws InvariantError unless s_prime is contained in s.
AxiomReport check_iia(const Solver& f, const Problem& s, const Problem& s_prime,
                      int resolution);
AxiomReport check_independence_of_timing(const Solver& f, const Problem& s, int m,
                                         int resolution);
/// Throws InvariantError unless s has equal ideal coordinates.
AxiomReport check_combination_improvement(const Solver& f, const Problem& s,
                                          int resolution);

/// A family of problems S^delta converging to S as delta -> 0.
using PerturbationFamily = std::function<Problem(double delta)>;

/// S^delta = cmp{g + delta * 1 : g a generator}, at Hausdorff distance delta.
PerturbationFamily additive_perturbation(const Problem& s);

/// Falsification-only continuity check over delta_k = 2^-k, k = 1..12: the
/// chosen points are chained by nearest neighbour and the chain's last
/// point is compared with the chosen set of S. Never returns pass.
AxiomReport check_continuity(const Solver& f, const Problem& s,
                             const PerturbationFamily& family, int resolution);
/// The same check on an explicit schedule (used for replay).
AxiomReport check_continuity(const Solver& f, const Problem& s,
                             std::span<const Problem> schedule,
                             std::span<const double> deltas, int resolution);

/// Reruns the check recorded in a report's witness against f.
AxiomReport replay(const Solver& f, const AxiomReport& report);

/// Worst verdict over a batch: fail, then pass, then inconclusive_pass,
/// then inconclusive. The first failing report's witness is kept.
AxiomReport aggregate(const std::string& axiom, const std::string& solution,
                      std::span<const AxiomReport> reports);

/// Axiom names accepted by run_on_corpus, in matrix column order first.
const std::vector<std::string>& corpus_axioms();

/// Runs one axiom over the corpus problems assigned to it and aggregates.
/// With dim != 0 only problems of that dimension are used.
AxiomReport run_on_corpus(const Solver& f, const std::string& axiom, const Corpus& c,
                          int resolution, std::size_t dim = 0);

/// Rows: zero, utilitarian, dictatorship(1), lexicographic KS, weak Pareto.
/// Columns: intermediate Pareto, scale invariance, anonymity, continuity,
/// weak IIA. Row k is designed to fail exactly column k.
struct IndependenceMatrix {
  std::vector<std::string> solutions;
  std::vector<std::string> axioms;
  std::vector<std::vector<AxiomReport>> cells;

  /// Diagonal cells fail; every other cell is pass or inconclusive_pass.
  bool diagonal_fail() const;
};

IndependenceMatrix independence_matrix(const Corpus& c, int resolution);
nlohmann::json to_json(const IndependenceMatrix& m);

}  // namespace bargain
