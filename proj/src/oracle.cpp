#include "bargain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "bargain/error.hpp"
#include "bargain/io.hpp"
#include "bargain/tolerance.hpp"

namespace bargain {

using nlohmann::json;

void OracleConfig::validate() const {
  if (problem_resolution < 1 || simplex_resolution < 1) {
    throw InputError("oracle resolutions must be at least 1");
  }
  if (!(eps_bis > 0.0 && eps_bis <= 1e-6)) throw InputError("eps_bis must lie in (0, 1e-6]");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Weights w = sum_m lambda_m v_m over a barycentric grid of the vertices.
std::vector<std::vector<double>> polytope_grid(const WeightSet& w, int resolution) {
  const auto& verts = w.vertices();
  std::vector<std::vector<double>> out;
  if (verts.size() == 1) return {verts.front().values()};
  for (const auto& lambda : simplex_grid(verts.size(), resolution)) {
    std::vector<double> p(w.dim(), 0.0);
    for (std::size_t m = 0; m < verts.size(); ++m) {
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += lambda[m] * verts[m][i];
    }
    out.push_back(std::move(p));
  }
  return out;
}

// One expert: a list of weights with the log confidence at each.
struct Expert {
  std::vector<std::vector<double>> weights;
  std::vector<double> log_c;
};

class DirectEvaluator {
 public:
  DirectEvaluator(const SolutionSpec& spec, int resolution) : family_(spec.family()) {
    auto plain = [&](const WeightSet& w) {
      Expert e{polytope_grid(w, resolution), {}};
      e.log_c.assign(e.weights.size(), 0.0);
      experts_.push_back(std::move(e));
    };
    switch (family_) {
      case Family::maxmin_nash: plain(spec.weight_set()); break;
      case Family::dualself_nash:
        for (const auto& w : spec.collection().sets()) plain(w);
        break;
      case Family::confidence_nash:
        for (const auto& c : spec.confidence_collection().functions()) {
          Expert e{polytope_grid(c.support(), resolution), {}};
          for (const auto& w : e.weights) e.log_c.push_back(c.log_value(w));
          experts_.push_back(std::move(e));
        }
        break;
      default: break;
    }
  }

  double operator()(const UtilityVector& x) const {
    switch (family_) {
      case Family::nash: {
        double p = 1.0;
        for (std::size_t i = 0; i < x.dim(); ++i) p *= x[i];
        return p;
      }
      case Family::kalai_smorodinsky:
      case Family::egalitarian: {
        double m = x[0];
        for (std::size_t i = 1; i < x.dim(); ++i) m = std::min(m, x[i]);
        return m;
      }
      case Family::utilitarian: {
        double s = 0.0;
        for (std::size_t i = 0; i < x.dim(); ++i) s += x[i];
        return s;
      }
      default: break;
    }
    std::vector<double> logx(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) logx[i] = std::log(x[i]);
    double best = kNegInf;
    for (const auto& e : experts_) {
      double inner = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < e.weights.size(); ++k) {
        double v = e.log_c[k];
        for (std::size_t i = 0; i < logx.size(); ++i) {
          if (e.weights[k][i] > 0.0) v += e.weights[k][i] * logx[i];
        }
        inner = std::min(inner, v);
      }
      best = std::max(best, inner);
    }
    return std::exp(best);
  }

 private:
  Family family_;
  std::vector<Expert> experts_;
};

}  // namespace

double oracle_objective(const SolutionSpec& spec, const UtilityVector& x,
                        int simplex_resolution) {
  return DirectEvaluator(spec, simplex_resolution)(x);
}

std::vector<UtilityVector> oracle_frontier(const Problem& s, int resolution) {
  if (resolution < 1) throw InputError("resolution must be at least 1");
  const std::size_t n = s.dim();
  std::vector<UtilityVector> out;
  for (const auto& g : s.generators()) {
    for (std::size_t face = 0; face < n; ++face) {
      if (!(g[face] > 0.0)) continue;
      // Odometer over the free coordinates' levels k g_j / r.
      std::vector<int> k(n, 0);
      while (true) {
        std::vector<double> c(n);
        for (std::size_t j = 0; j < n; ++j) {
          c[j] = j == face ? g[j] : (k[j] == resolution ? g[j] : k[j] * g[j] / resolution);
        }
        out.emplace_back(std::move(c));
        std::size_t j = 0;
        for (; j < n; ++j) {
          if (j == face) continue;
          if (++k[j] <= resolution) break;
          k[j] = 0;
        }
        if (j == n) break;
      }
    }
  }
  if (out.empty()) out.emplace_back(std::vector<double>(n, 0.0));
  sort_unique(out);
  return out;
}

SolutionResult brute_force_solve(const Problem& s, const SolutionSpec& spec,
                                 const OracleConfig& config) {
  config.validate();
  const DirectEvaluator eval(spec, config.simplex_resolution);
  const std::vector<UtilityVector> pts = oracle_frontier(s, config.problem_resolution);
  const IdealPoint b = ideal_point(s);
  std::vector<double> values;
  values.reserve(pts.size());
  for (const auto& p : pts) values.push_back(eval(spec.normalized() ? normalize(p, b) : p));

  SolutionResult r;
  r.candidate_count = pts.size();
  r.value = *std::max_element(values.begin(), values.end());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (within_tie(values[k], r.value)) r.chosen.push_back(pts[k]);
  }
  return r;
}

double degree_one_objective(const SolutionSpec& spec, const UtilityVector& x) {
  const double v = eval_objective(spec, x);
  if (spec.family() == Family::nash) return std::pow(v, 1.0 / static_cast<double>(x.dim()));
  return v;
}

VDefinition v_from_definition(const SolutionSpec& spec, const UtilityVector& x,
                              const OracleConfig& config) {
  config.validate();
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (!(x[i] > 0.0 && x[i] <= 1.0)) throw InputError("v_from_definition needs x in (0, 1]^n");
  }
  VDefinition out;
  auto member = [&](double alpha) {
    const UtilityVector diag(std::vector<double>(x.dim(), alpha));
    const Problem p = symmetric_hull({x, diag});
    std::vector<UtilityVector> cands = p.generators();
    cands.push_back(diag);
    sort_unique(cands);
    const SolutionResult r = solve(p, spec, cands);
    const bool in = std::any_of(r.chosen.begin(), r.chosen.end(), [&](const UtilityVector& c) {
      return approx_equal(c, diag, kTieTol);
    });
    out.trace.push_back({alpha, in});
    return in;
  };

  double lo = config.eps_bis, hi = 1.0;
  if (!member(hi) || member(lo)) {
    out.bracket_ok = false;
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  while (hi - lo > config.eps_bis) {
    const double mid = 0.5 * (lo + hi);
    (member(mid) ? hi : lo) = mid;
  }
  out.value = hi;
  // The predicate should be monotone in alpha; spot-check both sides.
  for (double t : {0.25, 0.5, 0.75}) {
    if (!member(hi + t * (1.0 - hi))) out.monotone_ok = false;
    if (lo * t > config.eps_bis && member(lo * t)) out.monotone_ok = false;
  }
  return out;
}

double i_transform(const SolutionSpec& spec, std::span<const double> y) {
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = std::exp(y[i]);
  return std::log(degree_one_objective(spec, UtilityVector(std::move(x))));
}

json to_json(const ClaimReport& r) {
  return json{{"claim", r.claim},         {"solution", r.solution},
              {"samples", r.samples},     {"worst_residual", r.worst_residual},
              {"tolerance", r.tolerance}, {"holds", r.holds},
              {"worst_case", r.worst_case}};
}

namespace {

std::vector<double> sample_y(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-3.0, 0.0);
  std::vector<double> y(n);
  for (auto& v : y) v = u(rng);
  return y;
}

ClaimReport start(const char* claim, const SolutionSpec& spec, std::size_t samples) {
  ClaimReport r;
  r.claim = claim;
  r.solution = spec.name();
  r.samples = samples;
  return r;
}

}  // namespace

ClaimReport check_translation_invariance(const SolutionSpec& spec, std::size_t n,
                                         std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> shift(-3.0, 0.0);
  ClaimReport r = start("translation_invariance", spec, samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const std::vector<double> y = sample_y(rng, n);
    const double a = shift(rng);
    std::vector<double> ya = y;
    for (auto& v : ya) v += a;
    const double lhs = i_transform(spec, ya), rhs = i_transform(spec, y) + a;
    const double res = std::fabs(lhs - rhs);
    if (k == 0 || res > r.worst_residual) {
      r.worst_residual = res;
      r.worst_case = {{"y", y}, {"alpha", a}, {"lhs", lhs}, {"rhs", rhs}};
    }
  }
  r.holds = r.worst_residual <= r.tolerance;
  return r;
}

ClaimReport check_i_homogeneity(const SolutionSpec& spec, std::size_t n,
                                std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double alphas[] = {0.5, 2.0, 3.0};
  ClaimReport r = start("i_homogeneity", spec, samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const std::vector<double> y = sample_y(rng, n);
    const double a = alphas[k % 3];
    std::vector<double> ay = y;
    for (auto& v : ay) v *= a;
    const double lhs = i_transform(spec, ay), rhs = a * i_transform(spec, y);
    const double res = std::fabs(lhs - rhs);
    if (k == 0 || res > r.worst_residual) {
      r.worst_residual = res;
      r.worst_case = {{"y", y}, {"alpha", a}, {"lhs", lhs}, {"rhs", rhs}};
    }
  }
  r.holds = r.worst_residual <= r.tolerance;
  return r;
}

ClaimReport check_i_concavity(const SolutionSpec& spec, std::size_t n,
                              std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double lambdas[] = {0.25, 0.5, 0.75};
  ClaimReport r = start("i_concavity", spec, samples);
  for (std::size_t k = 0; k < samples; ++k) {
    std::vector<double> y = sample_y(rng, n), yp = sample_y(rng, n);
    double iy = i_transform(spec, y), iyp = i_transform(spec, yp);
    double lambda = lambdas[k % 3];
    const bool level_slice = k % 3 == 2 && std::isfinite(iy) && std::isfinite(iyp);
    if (level_slice) {
      // Translation moves the higher point onto the lower one's level set.
      auto& high = iy > iyp ? y : yp;
      const double d = -std::fabs(iy - iyp);
      for (auto& v : high) v += d;
      iy = i_transform(spec, y);
      iyp = i_transform(spec, yp);
      lambda = 0.5;
    }
    std::vector<double> mix(n);
    for (std::size_t i = 0; i < n; ++i) mix[i] = lambda * y[i] + (1 - lambda) * yp[i];
    const double lhs = i_transform(spec, mix), rhs = lambda * iy + (1 - lambda) * iyp;
    const double res = lhs - rhs;
    if (k == 0 || res < r.worst_residual) {
      r.worst_residual = res;
      r.worst_case = {{"y", y},     {"y_prime", yp}, {"lambda", lambda},
                      {"lhs", lhs}, {"rhs", rhs},    {"level_slice", level_slice}};
    }
  }
  r.holds = r.worst_residual >= -r.tolerance;
  return r;
}

json to_json(const CrossCheck& c) {
  return json{{"agree", c.agree},
              {"solve_value", c.solve_value},
              {"oracle_value", c.oracle_value},
              {"gap", c.gap},
              {"bound", c.bound},
              {"solve_chosen", io::to_json(c.solve_chosen)},
              {"oracle_chosen", io::to_json(c.oracle_chosen)}};
}

CrossCheck cross_check(const Problem& s, const SolutionSpec& spec, const OracleConfig& config) {
  config.validate();
  const int r = config.problem_resolution;
  const SolutionResult a = solve(s, spec, r);
  const SolutionResult o = brute_force_solve(s, spec, config);
  const IdealPoint b = ideal_point(s);
  const std::size_t n = s.dim();

  CrossCheck c;
  c.solve_value = a.value;
  c.oracle_value = o.value;
  c.solve_chosen = a.chosen;
  c.oracle_chosen = o.chosen;

  double lip = 0.0;
  if (spec.family() == Family::utilitarian) {
    for (std::size_t j = 0; j < n; ++j) lip += b[j];
    c.gap = std::fabs(a.value - o.value);
  } else if (spec.family() == Family::egalitarian) {
    for (std::size_t j = 0; j < n; ++j) lip = std::max(lip, b[j]);
    c.gap = std::fabs(a.value - o.value);
  } else {
    // d log V / d x_j <= w_j / x_j, so a step of b_j / r moves log V by at
    // most max_j b_j / x_j / r (n times that for the plain product).
    for (const auto* set : {&a.chosen, &o.chosen}) {
      for (const auto& p : *set) {
        for (std::size_t j = 0; j < n; ++j) {
          lip = std::max(lip, p[j] > 0.0 ? b[j] / p[j] : std::numeric_limits<double>::infinity());
        }
      }
    }
    if (spec.family() == Family::nash) lip *= static_cast<double>(n);
    if (a.value == 0.0 && o.value == 0.0) {
      c.gap = 0.0;
    } else {
      c.gap = std::fabs(std::log(a.value) - std::log(o.value));
    }
  }
  c.bound = 2.0 * lip / r;
  c.agree = c.gap <= c.bound;
  return c;
}

}  // namespace bargain
