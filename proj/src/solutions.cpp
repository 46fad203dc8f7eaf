#include "bargain/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bargain/error.hpp"
#include "bargain/kernels.hpp"
#include "bargain/tolerance.hpp"

namespace bargain {

std::string to_string(Family f) {
  switch (f) {
    case Family::nash: return "nash";
    case Family::kalai_smorodinsky: return "kalai_smorodinsky";
    case Family::egalitarian: return "egalitarian";
    case Family::utilitarian: return "utilitarian";
    case Family::maxmin_nash: return "maxmin_nash";
    case Family::dualself_nash: return "dualself_nash";
    case Family::confidence_nash: return "confidence_nash";
  }
  return "unknown";
}

SolutionSpec SolutionSpec::make(Family family, bool normalized, Weights weights) {
  switch (family) {
    case Family::egalitarian:
    case Family::utilitarian:
      if (normalized) {
        throw InvariantError(to_string(family) + " requires normalized=false");
      }
      break;
    case Family::kalai_smorodinsky:
      if (!normalized) throw InvariantError("kalai_smorodinsky requires normalized=true");
      break;
    default:
      break;
  }
  const bool wants_set = family == Family::maxmin_nash;
  const bool wants_collection = family == Family::dualself_nash;
  const bool wants_confidence = family == Family::confidence_nash;
  if (wants_set != std::holds_alternative<WeightSet>(weights) ||
      wants_collection != std::holds_alternative<WeightCollection>(weights) ||
      wants_confidence != std::holds_alternative<ConfidenceCollection>(weights)) {
    throw InvariantError("weight structure does not match family " + to_string(family));
  }
  if (wants_confidence) {
    const auto& c = std::get<ConfidenceCollection>(weights);
    if (!c.is_normalized()) {
      throw InvariantError("confidence collection is not normalized: max_c min_w log c = " +
                           std::to_string(c.normalization_level()));
    }
  }
  return SolutionSpec(family, normalized, std::move(weights));
}

SolutionSpec SolutionSpec::nash(bool normalized) {
  return make(Family::nash, normalized);
}
SolutionSpec SolutionSpec::kalai_smorodinsky() {
  return make(Family::kalai_smorodinsky, true);
}
SolutionSpec SolutionSpec::egalitarian() { return make(Family::egalitarian, false); }
SolutionSpec SolutionSpec::utilitarian() { return make(Family::utilitarian, false); }
SolutionSpec SolutionSpec::maxmin(WeightSet w, bool normalized) {
  return make(Family::maxmin_nash, normalized, std::move(w));
}
SolutionSpec SolutionSpec::dualself(WeightCollection w, bool normalized) {
  return make(Family::dualself_nash, normalized, std::move(w));
}
SolutionSpec SolutionSpec::confidence(ConfidenceCollection c, bool normalized) {
  return make(Family::confidence_nash, normalized, std::move(c));
}

UtilityVector normalize(const UtilityVector& x, const IdealPoint& b) {
  if (x.dim() != b.dim()) throw InputError("normalize: dimension mismatch");
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (!(b[i] > 0.0)) throw InvariantError("normalize: ideal coordinate must be positive");
    out[i] = x[i] / b[i];
  }
  return UtilityVector(std::move(out));
}

namespace {

std::size_t spec_dim(const SolutionSpec& spec) {
  return std::visit(
      [](const auto& w) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(w)>, std::monostate>) {
          return 0;
        } else {
          return w.dim();
        }
      },
      spec.weights());
}

struct InnerScan {
  std::vector<double> best;
  std::vector<std::int32_t> index;
};

// Row-wise min over the vertices of w of offsets[k] + v_k . logs[r].
InnerScan scan_vertices(const WeightSet& w, std::span<const double> offsets,
                        const std::vector<const double*>& logs, std::size_t rows) {
  InnerScan out{std::vector<double>(rows, std::numeric_limits<double>::infinity()),
                std::vector<std::int32_t>(rows, 0)};
  const auto& k = kernels::active();
  const auto& verts = w.vertices();
  for (std::size_t v = 0; v < verts.size(); ++v) {
    k.weighted_sum_min(logs.data(), logs.size(), rows, verts[v].coords().data(),
                       offsets[v], static_cast<std::int32_t>(v), out.best.data(),
                       out.index.data());
  }
  return out;
}

// Log value and witness of one expert, for every row.
struct ExpertScan {
  std::vector<double> log_value;
  std::vector<WeightVector> weight;
};

ExpertScan scan_weight_set(const WeightSet& w, const std::vector<const double*>& logs,
                           std::size_t rows) {
  const std::vector<double> zero(w.vertices().size(), 0.0);
  InnerScan s = scan_vertices(w, zero, logs, rows);
  ExpertScan out{std::move(s.best), std::vector<WeightVector>(rows)};
  for (std::size_t r = 0; r < rows; ++r) out.weight[r] = w.vertices()[s.index[r]];
  return out;
}

ExpertScan scan_confidence(const ConfidenceFunction& c,
                           const std::vector<const double*>& logs, std::size_t rows) {
  if (c.pieces().size() == 1) {
    const AffinePiece& piece = c.pieces().front();
    std::vector<double> offsets;
    for (const auto& v : c.support().vertices()) {
      double a = piece.intercept;
      for (std::size_t i = 0; i < v.dim(); ++i) a += piece.slope[i] * v[i];
      offsets.push_back(a);
    }
    InnerScan s = scan_vertices(c.support(), offsets, logs, rows);
    ExpertScan out{std::move(s.best), std::vector<WeightVector>(rows)};
    for (std::size_t r = 0; r < rows; ++r) {
      out.weight[r] = c.support().vertices()[s.index[r]];
    }
    return out;
  }
  ExpertScan out{std::vector<double>(rows), std::vector<WeightVector>(rows)};
  std::vector<double> g(logs.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < logs.size(); ++i) g[i] = logs[i][r];
    InnerMin m = min_confidence_over_simplex(c, g);
    out.log_value[r] = m.value;
    out.weight[r] = std::move(m.argmin);
  }
  return out;
}

// Max over experts; the lowest expert index wins ties.
template <class Experts, class Scan>
std::vector<Evaluation> max_over_experts(const Experts& experts, Scan scan,
                                         std::size_t rows) {
  std::vector<Evaluation> out(rows);
  std::vector<double> best(rows, -std::numeric_limits<double>::infinity());
  for (std::size_t e = 0; e < experts.size(); ++e) {
    ExpertScan s = scan(experts[e]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (e == 0 || s.log_value[r] > best[r]) {
        best[r] = s.log_value[r];
        out[r].witness = Witness{e, std::move(s.weight[r])};
      }
    }
  }
  for (std::size_t r = 0; r < rows; ++r) out[r].value = std::exp(best[r]);
  return out;
}

// Coordinate attaining the minimum; among ties the highest index, whose unit
// vector is the lexicographically smallest minimizing vertex of the simplex.
std::size_t argmin_coordinate(const UtilityVector& x) {
  std::size_t at = 0;
  for (std::size_t i = 1; i < x.dim(); ++i) {
    if (x[i] <= x[at]) at = i;
  }
  return at;
}

}  // namespace

std::vector<Evaluation> evaluate(const SolutionSpec& spec,
                                 std::span<const UtilityVector> points) {
  if (points.empty()) return {};
  const std::size_t n = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != n) throw InputError("evaluate: dimension mismatch among points");
  }
  const std::size_t wd = spec_dim(spec);
  if (wd != 0 && wd != n) throw InputError("evaluate: weight dimension does not match points");

  const std::size_t rows = points.size();
  const Columns cols = Columns::from_points(points);
  const auto ptrs = cols.pointers();
  const auto& k = kernels::active();
  std::vector<Evaluation> out(rows);

  auto direct = [&](auto kernel, auto witness) {
    std::vector<double> v(rows);
    kernel(ptrs.data(), n, rows, v.data());
    for (std::size_t r = 0; r < rows; ++r) out[r] = Evaluation{v[r], witness(r)};
    return out;
  };
  const auto uniform = [&](std::size_t) { return Witness{0, WeightVector::uniform(n)}; };
  const auto min_unit = [&](std::size_t r) {
    return Witness{0, WeightVector::unit(n, argmin_coordinate(points[r]))};
  };

  switch (spec.family()) {
    case Family::nash: return direct(k.product, uniform);
    case Family::utilitarian: return direct(k.sum, uniform);
    case Family::kalai_smorodinsky:
    case Family::egalitarian: return direct(k.minimum, min_unit);
    default: break;
  }

  Columns logs(n, rows);
  for (std::size_t i = 0; i < n; ++i) {
    const double* src = cols.col(i);
    double* dst = logs.col(i);
    for (std::size_t r = 0; r < rows; ++r) dst[r] = std::log(src[r]);
  }
  const auto lptrs = logs.pointers();

  switch (spec.family()) {
    case Family::maxmin_nash: {
      const std::vector<WeightSet> one{spec.weight_set()};
      return max_over_experts(
          one, [&](const WeightSet& w) { return scan_weight_set(w, lptrs, rows); }, rows);
    }
    case Family::dualself_nash:
      return max_over_experts(
          spec.collection().sets(),
          [&](const WeightSet& w) { return scan_weight_set(w, lptrs, rows); }, rows);
    case Family::confidence_nash:
      return max_over_experts(
          spec.confidence_collection().functions(),
          [&](const ConfidenceFunction& c) { return scan_confidence(c, lptrs, rows); },
          rows);
    default:
      break;
  }
  throw InvariantError("evaluate: unhandled family");
}

Evaluation evaluate(const SolutionSpec& spec, const UtilityVector& x) {
  return evaluate(spec, std::span<const UtilityVector>(&x, 1)).front();
}

double eval_objective(const SolutionSpec& spec, const UtilityVector& x) {
  return evaluate(spec, x).value;
}

namespace {

void check_candidates(const Problem& s, std::span<const UtilityVector> candidates) {
  if (candidates.empty()) throw InvariantError("candidate set must be nonempty");
  for (const auto& c : candidates) {
    if (c.dim() != s.dim()) throw InputError("candidate dimension mismatch");
    if (!contains(s, c)) {
      throw InvariantError("candidate " + c.str() + " lies outside the problem");
    }
  }
}

}  // namespace

SolutionResult solve(const Problem& s, const SolutionSpec& spec,
                     std::span<const UtilityVector> candidates) {
  check_candidates(s, candidates);
  std::vector<Evaluation> evals;
  if (spec.normalized()) {
    const IdealPoint b = ideal_point(s);
    std::vector<UtilityVector> scaled;
    scaled.reserve(candidates.size());
    for (const auto& c : candidates) scaled.push_back(normalize(c, b));
    evals = evaluate(spec, scaled);
  } else {
    evals = evaluate(spec, candidates);
  }

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& e : evals) best = std::max(best, e.value);
  SolutionResult out;
  out.value = best;
  out.candidate_count = candidates.size();
  for (std::size_t r = 0; r < candidates.size(); ++r) {
    if (within_tie(evals[r].value, best)) {
      out.chosen.push_back(candidates[r]);
      out.witnesses.push_back(std::move(evals[r].witness));
    }
  }
  return out;
}

SolutionResult solve(const Problem& s, const SolutionSpec& spec, int resolution) {
  const auto cands = candidate_points(s, resolution);
  return solve(s, spec, cands);
}

namespace {

std::vector<double> sorted_normalized(const UtilityVector& x, const IdealPoint& b) {
  std::vector<double> v = normalize(x, b).values();
  std::sort(v.begin(), v.end());
  return v;
}

// -1, 0, 1 as a is lexicographically below, tied with, or above b.
int lex_compare(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (approx_eq(a[j], b[j], kTieTol)) continue;
    return a[j] < b[j] ? -1 : 1;
  }
  return 0;
}

}  // namespace

SolutionResult lexicographic_ks_solve(const Problem& s,
                                      std::span<const UtilityVector> candidates) {
  check_candidates(s, candidates);
  const IdealPoint b = ideal_point(s);
  std::vector<std::vector<double>> keys;
  keys.reserve(candidates.size());
  for (const auto& c : candidates) keys.push_back(sorted_normalized(c, b));
  std::size_t best = 0;
  for (std::size_t r = 1; r < keys.size(); ++r) {
    if (lex_compare(keys[r], keys[best]) > 0) best = r;
  }
  SolutionResult out;
  out.value = keys[best].front();
  out.candidate_count = candidates.size();
  for (std::size_t r = 0; r < keys.size(); ++r) {
    if (lex_compare(keys[r], keys[best]) == 0) out.chosen.push_back(candidates[r]);
  }
  return out;
}

SolutionResult lexicographic_ks_solve(const Problem& s, int resolution) {
  const auto cands = candidate_points(s, resolution);
  return lexicographic_ks_solve(s, cands);
}

SolutionResult dictatorship_solve(const Problem& s, std::size_t player,
                                  std::span<const UtilityVector> candidates) {
  check_candidates(s, candidates);
  if (player >= s.dim()) throw InputError("dictatorship: player index out of range");
  double best = 0.0;
  for (const auto& c : candidates) best = std::max(best, c[player]);
  SolutionResult out;
  out.value = best;
  out.candidate_count = candidates.size();
  for (const auto& c : candidates) {
    if (within_tie(c[player], best)) out.chosen.push_back(c);
  }
  return out;
}

SolutionResult dictatorship_solve(const Problem& s, std::size_t player, int resolution) {
  const auto cands = candidate_points(s, resolution);
  return dictatorship_solve(s, player, cands);
}

SolutionResult zero_solve(const Problem& s) {
  SolutionResult out;
  out.chosen.push_back(UtilityVector(std::vector<double>(s.dim(), 0.0)));
  out.value = 0.0;
  out.candidate_count = 1;
  return out;
}

SolutionResult weak_pareto_solve(const Problem& s,
                                 std::span<const UtilityVector> candidates) {
  check_candidates(s, candidates);
  SolutionResult out;
  out.candidate_count = candidates.size();
  for (const auto& c : candidates) {
    if (is_weakly_pareto(s, c)) out.chosen.push_back(c);
  }
  return out;
}

SolutionResult weak_pareto_solve(const Problem& s, int resolution) {
  const auto cands = candidate_points(s, resolution);
  return weak_pareto_solve(s, cands);
}

Solver make_solver(const SolutionSpec& spec) { return make_solver(spec, spec.name()); }

Solver make_solver(const SolutionSpec& spec, std::string name) {
  return Solver{std::move(name),
                [spec](const Problem& s, std::span<const UtilityVector> c) {
                  return solve(s, spec, c);
                }};
}

Solver zero_solver() {
  return Solver{"zero", [](const Problem& s, std::span<const UtilityVector>) {
                  return zero_solve(s);
                }};
}

Solver dictatorship_solver(std::size_t player) {
  return Solver{"dictatorship_" + std::to_string(player + 1),
                [player](const Problem& s, std::span<const UtilityVector> c) {
                  return dictatorship_solve(s, player, c);
                }};
}

Solver lexicographic_ks_solver() {
  return Solver{"lexicographic_ks",
                [](const Problem& s, std::span<const UtilityVector> c) {
                  return lexicographic_ks_solve(s, c);
                }};
}

Solver weak_pareto_solver() {
  return Solver{"weak_pareto", [](const Problem& s, std::span<const UtilityVector> c) {
                  return weak_pareto_solve(s, c);
                }};
}

}  // namespace bargain
