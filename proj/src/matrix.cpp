#include <cmath>

#include "bargain/axioms.hpp"
#include "bargain/error.hpp"

namespace bargain {

const std::vector<std::string>& corpus_axioms() {
  static const std::vector<std::string> names{
      "intermediate_pareto", "scale_invariance", "anonymity",
      "continuity",          "weak_iia",         "iia",
      "homogeneity",         "independence_of_timing", "combination_improvement"};
  return names;
}

namespace {

bool keep(const Problem& s, std::size_t dim) { return dim == 0 || s.dim() == dim; }

}  // namespace

AxiomReport run_on_corpus(const Solver& f, const std::string& axiom, const Corpus& c,
                          int resolution, std::size_t dim) {
  std::vector<AxiomReport> out;
  if (axiom == "intermediate_pareto") {
    for (const auto& s : c.suite) {
      if (keep(s, dim)) out.push_back(check_intermediate_pareto(f, s, resolution));
    }
  } else if (axiom == "scale_invariance") {
    for (const auto& s : c.suite) {
      if (!keep(s, dim)) continue;
      for (const auto& a : c.scale_vectors(s.dim())) {
        out.push_back(check_scale_invariance(f, s, a, resolution));
      }
    }
    if (c.hand_cases && keep(c.utilitarian_scale_case, dim)) {
      const std::vector<double> a{10, 1};
      out.push_back(check_scale_invariance(f, c.utilitarian_scale_case, a, resolution));
    }
  } else if (axiom == "homogeneity") {
    for (const auto& s : c.suite) {
      if (!keep(s, dim)) continue;
      for (double alpha : {0.5, 2.0, 3.0}) {
        out.push_back(check_homogeneity(f, s, alpha, resolution));
      }
    }
  } else if (axiom == "anonymity") {
    for (const auto& s : c.symmetric) {
      if (keep(s, dim)) out.push_back(check_anonymity(f, s, resolution));
    }
    if (c.hand_cases && keep(c.dictatorship_anonymity_case, dim)) {
      out.push_back(check_anonymity(f, c.dictatorship_anonymity_case, resolution));
    }
  } else if (axiom == "weak_iia") {
    for (const auto& [s, t] : c.nested) {
      if (keep(s, dim)) out.push_back(check_weak_iia(f, s, t, resolution));
    }
    const auto& [s, t] = c.weak_pareto_iia_case;
    if (c.hand_cases && keep(s, dim)) out.push_back(check_weak_iia(f, s, t, resolution));
  } else if (axiom == "iia") {
    for (const auto* pairs : {&c.nested, &c.general_nested}) {
      for (const auto& [s, t] : *pairs) {
        if (keep(s, dim)) out.push_back(check_iia(f, s, t, resolution));
      }
    }
    const auto& [s, t] = c.ks_iia_case;
    if (c.hand_cases && keep(s, dim)) out.push_back(check_iia(f, s, t, resolution));
  } else if (axiom == "independence_of_timing") {
    for (const auto& s : c.equal_ideal) {
      if (!keep(s, dim)) continue;
      for (int m : {2, 3}) out.push_back(check_independence_of_timing(f, s, m, resolution));
    }
  } else if (axiom == "combination_improvement") {
    for (const auto& s : c.equal_ideal) {
      if (keep(s, dim)) out.push_back(check_combination_improvement(f, s, resolution));
    }
  } else if (axiom == "continuity") {
    if (c.hand_cases && keep(c.threshold_limit, dim)) {
      out.push_back(check_continuity(f, c.threshold_limit, threshold_problem, resolution));
    }
    const std::size_t count = std::min<std::size_t>(10, c.suite.size());
    for (std::size_t k = 0; k < count; ++k) {
      const Problem& s = c.suite[k];
      if (keep(s, dim)) {
        out.push_back(check_continuity(f, s, additive_perturbation(s), resolution));
      }
    }
  } else {
    throw InputError("unknown axiom '" + axiom + "'");
  }
  return aggregate(axiom, f.name, out);
}

bool IndependenceMatrix::diagonal_fail() const {
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t k = 0; k < cells[r].size(); ++k) {
      const Verdict v = cells[r][k].verdict;
      if (r == k ? v != Verdict::fail
                 : !(v == Verdict::pass || v == Verdict::inconclusive_pass)) {
        return false;
      }
    }
  }
  return true;
}

IndependenceMatrix independence_matrix(const Corpus& c, int resolution) {
  const std::vector<Solver> rows{zero_solver(), make_solver(SolutionSpec::utilitarian()),
                                 dictatorship_solver(0), lexicographic_ks_solver(),
                                 weak_pareto_solver()};
  IndependenceMatrix m;
  m.axioms = {"intermediate_pareto", "scale_invariance", "anonymity", "continuity",
              "weak_iia"};
  for (const auto& f : rows) {
    m.solutions.push_back(f.name);
    std::vector<AxiomReport> row;
    for (const auto& a : m.axioms) row.push_back(run_on_corpus(f, a, c, resolution));
    m.cells.push_back(std::move(row));
  }
  return m;
}

nlohmann::json to_json(const IndependenceMatrix& m) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& row : m.cells) {
    for (const auto& r : row) cells.push_back(to_json(r));
  }
  return {{"solutions", m.solutions},
          {"axioms", m.axioms},
          {"diagonal_fail", m.diagonal_fail()},
          {"cells", cells}};
}

}  // namespace bargain
