#include "bargain/io.hpp"

#include <fstream>
#include <sstream>

#include "bargain/error.hpp"

namespace bargain::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object with key '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing key '") + key + "'");
  return *it;
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError(std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

bool flag(const json& j, const char* key, bool fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw InputError(std::string("'") + key + "' must be a boolean");
  return it->get<bool>();
}

std::vector<WeightVector> vertex_list(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("vertex list must be a nonempty array");
  std::vector<WeightVector> out;
  for (const auto& v : j) out.push_back(weight_from_json(v));
  return out;
}

}  // namespace

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

json to_json(const UtilityVector& x) { return json(x.values()); }

json to_json(std::span<const UtilityVector> points) {
  json out = json::array();
  for (const auto& p : points) out.push_back(to_json(p));
  return out;
}

json to_json(const Problem& s) {
  return json{{"n", s.dim()}, {"generators", to_json(s.generators())}};
}

json to_json(const WeightVector& w) { return json(w.values()); }

namespace {
json vertices_json(const WeightSet& w) {
  json v = json::array();
  for (const auto& u : w.vertices()) v.push_back(to_json(u));
  return v;
}
}  // namespace

json to_json(const WeightSet& w) {
  return json{{"type", "weight_set"}, {"vertices", vertices_json(w)}};
}

json to_json(const WeightCollection& c) {
  json sets = json::array();
  for (const auto& s : c.sets()) sets.push_back(vertices_json(s));
  return json{{"type", "collection"}, {"sets", sets}, {"symmetrize", false}};
}

json to_json(const ConfidenceCollection& c) {
  json fs = json::array();
  for (const auto& f : c.functions()) {
    json pieces = json::array();
    for (const auto& p : f.pieces()) pieces.push_back({{"a", p.slope}, {"beta", p.intercept}});
    fs.push_back({{"support", vertices_json(f.support())}, {"pieces", pieces}});
  }
  return json{{"type", "confidence"}, {"functions", fs}, {"symmetrize", false}};
}

json to_json(const SolutionSpec& spec) {
  json out{{"family", spec.name()}, {"normalized", spec.normalized()}};
  std::visit(
      [&](const auto& w) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(w)>, std::monostate>) {
          out["weights"] = to_json(w);
        }
      },
      spec.weights());
  return out;
}

json to_json(const SolutionResult& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"expert", w.expert}, {"weight", to_json(w.weight)}});
  }
  return json{{"chosen", to_json(r.chosen)},
              {"value", r.value},
              {"witnesses", witnesses},
              {"candidate_count", r.candidate_count}};
}

UtilityVector utility_from_json(const json& j) {
  return UtilityVector(numbers(j, "utility vector"));
}

std::vector<UtilityVector> points_from_json(const json& j) {
  if (!j.is_array()) throw InputError("point list must be an array");
  std::vector<UtilityVector> out;
  for (const auto& p : j) out.push_back(utility_from_json(p));
  return out;
}

Problem problem_from_json(const json& j) {
  const json& n = field(j, "n");
  if (!n.is_number_integer()) throw InputError("'n' must be an integer");
  const auto pts = points_from_json(field(j, "generators"));
  if (pts.empty()) throw InputError("problem needs at least one generator");
  for (const auto& p : pts) {
    if (static_cast<long long>(p.dim()) != n.get<long long>()) {
      throw InputError("generator dimension does not match 'n'");
    }
  }
  return canonicalize(pts);
}

WeightVector weight_from_json(const json& j) { return WeightVector(numbers(j, "weight vector")); }

SolutionSpec::Weights weights_from_json(const json& j) {
  const json& type = field(j, "type");
  if (!type.is_string()) throw InputError("'type' must be a string");
  const std::string t = type.get<std::string>();
  if (t == "weight_set") return WeightSet(vertex_list(field(j, "vertices")));
  if (t == "collection") {
    const json& sets = field(j, "sets");
    if (!sets.is_array() || sets.empty()) throw InputError("'sets' must be a nonempty array");
    std::vector<WeightSet> out;
    for (const auto& s : sets) out.emplace_back(vertex_list(s));
    return WeightCollection(std::move(out), flag(j, "symmetrize", false));
  }
  if (t == "confidence") {
    const json& fs = field(j, "functions");
    if (!fs.is_array() || fs.empty()) throw InputError("'functions' must be a nonempty array");
    std::vector<ConfidenceFunction> out;
    for (const auto& f : fs) {
      const json& pieces = field(f, "pieces");
      if (!pieces.is_array()) throw InputError("'pieces' must be an array");
      std::vector<AffinePiece> ps;
      for (const auto& p : pieces) {
        const json& beta = field(p, "beta");
        if (!beta.is_number()) throw InputError("'beta' must be a number");
        ps.push_back({numbers(field(p, "a"), "slope"), beta.get<double>()});
      }
      out.emplace_back(WeightSet(vertex_list(field(f, "support"))), std::move(ps));
    }
    ConfidenceCollection c(std::move(out), flag(j, "symmetrize", false));
    if (flag(j, "normalize", false)) c = normalize_collection(c).collection;
    return c;
  }
  throw InputError("unknown weight structure type '" + t + "'");
}

namespace {

Family family_from_name(const std::string& name) {
  for (Family f : {Family::nash, Family::kalai_smorodinsky, Family::egalitarian,
                   Family::utilitarian, Family::maxmin_nash, Family::dualself_nash,
                   Family::confidence_nash}) {
    if (to_string(f) == name) return f;
  }
  throw InputError("unknown family '" + name + "'");
}

std::string family_name(const json& j) {
  const json& f = field(j, "family");
  if (!f.is_string()) throw InputError("'family' must be a string");
  return f.get<std::string>();
}

}  // namespace

SolutionSpec spec_from_json(const json& j) {
  const Family family = family_from_name(family_name(j));
  const bool default_normalized =
      !(family == Family::egalitarian || family == Family::utilitarian);
  const bool normalized = flag(j, "normalized", default_normalized);
  SolutionSpec::Weights weights;
  if (j.contains("weights")) weights = weights_from_json(j.at("weights"));
  return SolutionSpec::make(family, normalized, std::move(weights));
}

Solver solver_from_json(const json& j) {
  const std::string name = family_name(j);
  if (name == "zero") return zero_solver();
  if (name == "lexicographic_ks") return lexicographic_ks_solver();
  if (name == "weak_pareto") return weak_pareto_solver();
  if (name == "dictatorship") {
    const json& p = field(j, "player");
    if (!p.is_number_integer() || p.get<long long>() < 1) {
      throw InputError("'player' must be a positive integer");
    }
    return dictatorship_solver(static_cast<std::size_t>(p.get<long long>() - 1));
  }
  return make_solver(spec_from_json(j));
}

}  // namespace bargain::io
