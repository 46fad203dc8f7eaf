// Command-line front end.
//
// Exit codes: 0 success, 1 an axiom check failed (or the matrix is not
// diagonal-fail), 2 input error, 3 invariant violation.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "bargain/axioms.hpp"
#include "bargain/corpus.hpp"
#include "bargain/error.hpp"
#include "bargain/io.hpp"
#include "bargain/oracle.hpp"

namespace fs = std::filesystem;
using namespace bargain;
using nlohmann::json;

namespace {

struct Common {
  int resolution = 64;
  std::uint64_t seed = 42;
  std::string format = "text";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, int default_resolution,
                std::vector<std::string> formats) {
  c.resolution = default_resolution;
  c.format = formats.front();
  cmd->add_option("--resolution", c.resolution, "Candidate grid resolution")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for all randomness")->capture_default_str();
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
}

// Writes to --out when given, else stdout.
void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InputError("cannot write " + c.out);
  f << text;
}

std::string point_text(const UtilityVector& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.dim(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

// Dimension fixed by the spec's weights, or 0 when any dimension works.
std::size_t spec_dim(const json& j) {
  if (!j.contains("weights")) return 0;
  const SolutionSpec spec = io::spec_from_json(j);
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

int cmd_solve(const std::string& problem_file, const std::string& spec_file, const Common& c) {
  const Problem s = io::problem_from_json(io::load_file(problem_file));
  const json spec_json = io::load_file(spec_file);
  const Solver f = io::solver_from_json(spec_json);
  const SolutionResult r = f.run(s, candidate_points(s, c.resolution));
  if (c.format == "json") {
    json out = io::to_json(r);
    out["solution"] = f.name;
    emit(c, out.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << std::setprecision(10);
  os << "solution: " << f.name << "\n";
  os << "value: " << r.value << "\n";
  os << "candidates: " << r.candidate_count << "\n";
  os << "chosen (" << r.chosen.size() << "):\n";
  for (const auto& x : r.chosen) os << "  " << point_text(x) << "\n";
  if (!r.witnesses.empty()) {
    os << "witnesses:\n";
    for (const auto& w : r.witnesses) {
      os << "  expert " << w.expert << " weight (";
      for (std::size_t i = 0; i < w.weight.dim(); ++i) os << (i ? ", " : "") << w.weight[i];
      os << ")\n";
    }
  }
  emit(c, os.str());
  return 0;
}

Corpus load_corpus_dir(const std::string& dir, std::uint64_t seed) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no .json problems in " + dir);
  std::vector<Problem> problems;
  std::vector<std::pair<Problem, Problem>> pairs;
  for (const auto& p : files) {
    const json j = io::load_file(p);
    if (j.contains("problem_prime")) {
      pairs.emplace_back(io::problem_from_json(j.at("problem")),
                         io::problem_from_json(j.at("problem_prime")));
    } else {
      problems.push_back(io::problem_from_json(j));
    }
  }
  return corpus_from_problems(problems, pairs, seed);
}

std::vector<std::string> expand_axioms(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& a : raw) {
    if (a.empty()) continue;
    if (a == "all") {
      out.insert(out.end(), corpus_axioms().begin(), corpus_axioms().end());
    } else if (a == "theorem1") {
      for (const char* t : {"intermediate_pareto", "scale_invariance", "anonymity",
                            "continuity", "weak_iia"}) {
        out.emplace_back(t);
      }
    } else if (std::find(corpus_axioms().begin(), corpus_axioms().end(), a) ==
               corpus_axioms().end()) {
      throw InputError("unknown axiom '" + a + "'");
    } else {
      out.push_back(a);
    }
  }
  if (out.empty()) throw InputError("the axiom list is empty");
  return out;
}

int cmd_check(bool builtin, const std::string& corpus_dir, const std::string& spec_file,
              const std::vector<std::string>& axioms_raw, const Common& c) {
  if (builtin == !corpus_dir.empty()) {
    throw InputError("give exactly one of --builtin-corpus and --corpus");
  }
  const std::vector<std::string> axioms = expand_axioms(axioms_raw);
  const json spec_json = io::load_file(spec_file);
  const Solver f = io::solver_from_json(spec_json);
  const std::size_t dim = spec_dim(spec_json);
  CorpusConfig config;
  config.seed = c.seed;
  const Corpus corpus = builtin ? build_corpus(config) : load_corpus_dir(corpus_dir, c.seed);

  std::vector<AxiomReport> reports;
  for (const auto& a : axioms) reports.push_back(run_on_corpus(f, a, corpus, c.resolution, dim));
  const bool any_fail = std::any_of(reports.begin(), reports.end(),
                                    [](const AxiomReport& r) { return r.verdict == Verdict::fail; });
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    emit(c, json{{"solution", f.name}, {"resolution", c.resolution}, {"reports", arr}}.dump(2) +
                "\n");
  } else {
    std::ostringstream os;
    os << "solution: " << f.name << "\n";
    os << std::left << std::setw(26) << "axiom" << std::setw(19) << "verdict"
       << "fail/pass/inconclusive_pass/inconclusive\n";
    for (const auto& r : reports) {
      const json& n = r.witness.at("counts");
      os << std::setw(26) << r.axiom << std::setw(19) << to_string(r.verdict) << n.at("fail")
         << "/" << n.at("pass") << "/" << n.at("inconclusive_pass") << "/"
         << n.at("inconclusive") << "\n";
    }
    for (const auto& r : reports) {
      if (r.verdict == Verdict::fail) {
        os << "witness for " << r.axiom << ": " << r.witness.dump() << "\n";
      }
    }
    emit(c, os.str());
  }
  return any_fail ? 1 : 0;
}

int cmd_matrix(const Common& c) {
  CorpusConfig config;
  config.seed = c.seed;
  const IndependenceMatrix m = independence_matrix(build_corpus(config), c.resolution);
  if (c.format == "json") {
    emit(c, to_json(m).dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << std::left << std::setw(18) << "";
    for (const auto& a : m.axioms) os << std::setw(21) << a;
    os << "\n";
    for (std::size_t r = 0; r < m.cells.size(); ++r) {
      os << std::setw(18) << m.solutions[r];
      for (const auto& cell : m.cells[r]) os << std::setw(21) << to_string(cell.verdict);
      os << "\n";
    }
    os << "diagonal-fail: " << (m.diagonal_fail() ? "yes" : "no") << "\n";
    emit(c, os.str());
  }
  return m.diagonal_fail() ? 0 : 1;
}

int cmd_oracle(const std::string& spec_file, const std::string& problem_file,
               std::size_t samples, std::size_t points, const Common& c) {
  const json spec_json = io::load_file(spec_file);
  const SolutionSpec spec = io::spec_from_json(spec_json);
  std::optional<Problem> s;
  if (!problem_file.empty()) s = io::problem_from_json(io::load_file(problem_file));
  std::size_t n = spec_dim(spec_json);
  if (n == 0) n = s ? s->dim() : 2;
  if (s && s->dim() != n) throw InputError("problem dimension does not match the spec");

  OracleConfig config;
  config.problem_resolution = c.resolution;
  config.seed = c.seed;
  json out{{"solution", spec.name()}, {"n", n}};
  if (spec.normalized()) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    double worst = 0.0;
    bool bracket = true, monotone = true;
    for (std::size_t k = 0; k < points; ++k) {
      std::vector<double> x(n);
      for (auto& v : x) v = u(rng);
      const UtilityVector xv(x);
      const VDefinition v = v_from_definition(spec, xv, config);
      bracket = bracket && v.bracket_ok;
      monotone = monotone && v.monotone_ok;
      if (v.bracket_ok) worst = std::max(worst, std::fabs(v.value - degree_one_objective(spec, xv)));
    }
    out["representation"] = {{"points", points},
                             {"max_error", worst},
                             {"bracket_ok", bracket},
                             {"monotone_ok", monotone}};
  }
  out["claims"] = {to_json(check_translation_invariance(spec, n, samples, c.seed)),
                   to_json(check_i_homogeneity(spec, n, samples, c.seed)),
                   to_json(check_i_concavity(spec, n, samples, c.seed))};
  if (s) out["cross_check"] = to_json(cross_check(*s, spec, config));
  if (c.format == "json") {
    emit(c, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "solution: " << spec.name() << " (n = " << n << ")\n";
    if (out.contains("representation")) {
      os << "representation max error: " << out["representation"]["max_error"] << "\n";
    }
    for (const auto& cl : out["claims"]) {
      os << std::left << std::setw(24) << cl["claim"].get<std::string>()
         << (cl["holds"].get<bool>() ? "holds" : "violated") << "  worst residual "
         << cl["worst_residual"] << "\n";
    }
    if (s) {
      os << "cross check: " << (out["cross_check"]["agree"].get<bool>() ? "agree" : "DISAGREE")
         << " gap " << out["cross_check"]["gap"] << " bound " << out["cross_check"]["bound"]
         << "\n";
    }
    emit(c, os.str());
  }
  return 0;
}

std::string svg_frontier(const Problem& s, const std::vector<UtilityVector>& frontier,
                         const std::vector<std::string>& names,
                         const std::vector<SolutionResult>& results) {
  const IdealPoint b = ideal_point(s);
  const double size = 400, pad = 30;
  const double top = std::max(b[0], b[1]);
  auto px = [&](double v) { return pad + v / top * (size - 2 * pad); };
  auto py = [&](double v) { return size - pad - v / top * (size - 2 * pad); };
  std::vector<UtilityVector> pts = frontier;
  std::sort(pts.begin(), pts.end(), [](const UtilityVector& a, const UtilityVector& c) {
    return a[0] != c[0] ? a[0] < c[0] : a[1] > c[1];
  });
  const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\">\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << py(0) << "\" x2=\"" << size - pad << "\" y2=\""
     << py(0) << "\" stroke=\"gray\"/>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << py(0) << "\" x2=\"" << pad << "\" y2=\"" << pad
     << "\" stroke=\"gray\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (const auto& p : pts) os << px(p[0]) << "," << py(p[1]) << " ";
  os << "\"/>\n";
  for (std::size_t k = 0; k < results.size(); ++k) {
    const char* col = colors[k % 5];
    for (const auto& x : results[k].chosen) {
      os << "<circle cx=\"" << px(x[0]) << "\" cy=\"" << py(x[1]) << "\" r=\"4\" fill=\"" << col
         << "\"/>\n";
    }
    os << "<text x=\"" << size - 150 << "\" y=\"" << 20 + 15 * k << "\" fill=\"" << col
       << "\" font-size=\"12\">" << names[k] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

int cmd_frontier(const std::string& problem_file, const std::vector<std::string>& spec_files,
                 const Common& c) {
  const Problem s = io::problem_from_json(io::load_file(problem_file));
  if (c.format == "svg" && s.dim() != 2) throw InputError("svg output needs n = 2");
  const std::vector<UtilityVector> cands = candidate_points(s, c.resolution);
  std::vector<UtilityVector> frontier;
  for (const auto& p : cands) {
    if (is_weakly_pareto(s, p)) frontier.push_back(p);
  }
  std::vector<SolutionSpec> specs;
  std::vector<std::string> names;
  std::vector<SolutionResult> results;
  for (const auto& file : spec_files) {
    specs.push_back(io::spec_from_json(io::load_file(file)));
    std::string name = specs.back().name();
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
    names.push_back(name);
    results.push_back(solve(s, specs.back(), cands));
  }
  if (c.format == "svg") {
    emit(c, svg_frontier(s, frontier, names, results));
    return 0;
  }
  const IdealPoint b = ideal_point(s);
  std::ostringstream os;
  os << std::setprecision(12);
  for (std::size_t i = 0; i < s.dim(); ++i) os << (i ? "," : "") << "x" << i + 1;
  for (const auto& n : names) os << ",value_" << n << ",chosen_" << n;
  os << "\n";
  for (const auto& p : frontier) {
    for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p[i];
    for (std::size_t k = 0; k < specs.size(); ++k) {
      const double v = eval_objective(specs[k], specs[k].normalized() ? normalize(p, b) : p);
      const auto& ch = results[k].chosen;
      const bool chosen = std::find(ch.begin(), ch.end(), p) != ch.end();
      os << "," << v << "," << (chosen ? 1 : 0);
    }
    os << "\n";
  }
  emit(c, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bargaining solutions: solve, axiom checks, independence matrix, oracle"};
  app.require_subcommand(1);

  Common solve_c, check_c, matrix_c, oracle_c, frontier_c;
  std::string problem_file, spec_file, corpus_dir;
  std::vector<std::string> spec_files, axioms;
  bool builtin = false;
  std::size_t samples = 500, points = 50;

  auto* solve = app.add_subcommand("solve", "Solve one problem under one spec");
  solve->add_option("--problem", problem_file, "Problem JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--spec", spec_file, "Spec JSON")->required()->check(CLI::ExistingFile);
  add_common(solve, solve_c, 64, {"text", "json"});

  auto* check = app.add_subcommand("check", "Run axiom checks over a corpus");
  check->add_flag("--builtin-corpus", builtin, "Use the seeded builtin corpus");
  check->add_option("--corpus", corpus_dir, "Directory of problem (or nested pair) JSON files");
  check->add_option("--spec", spec_file, "Spec JSON")->required()->check(CLI::ExistingFile);
  check->add_option("--axioms", axioms, "Comma-separated axioms, 'theorem1' or 'all'")
      ->required()
      ->delimiter(',')
      ->allow_extra_args(false);
  add_common(check, check_c, 8, {"text", "json"});

  auto* matrix = app.add_subcommand("matrix", "Independence matrix over the builtin corpus");
  add_common(matrix, matrix_c, 8, {"text", "json"});

  auto* oracle = app.add_subcommand("oracle", "Representation and structural checks of a spec");
  oracle->add_option("--spec", spec_file, "Spec JSON")->required()->check(CLI::ExistingFile);
  oracle->add_option("--problem", problem_file, "Problem JSON for a brute-force cross check")
      ->check(CLI::ExistingFile);
  oracle->add_option("--samples", samples, "Samples per claim")->capture_default_str();
  oracle->add_option("--points", points, "Points for the representation check")
      ->capture_default_str();
  add_common(oracle, oracle_c, 64, {"json", "text"});

  auto* frontier = app.add_subcommand("frontier", "Export frontier values and chosen points");
  frontier->add_option("--problem", problem_file, "Problem JSON")->required()->check(CLI::ExistingFile);
  frontier->add_option("--spec", spec_files, "Spec JSON (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(frontier, frontier_c, 64, {"csv", "svg"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(problem_file, spec_file, solve_c);
    if (check->parsed()) return cmd_check(builtin, corpus_dir, spec_file, axioms, check_c);
    if (matrix->parsed()) return cmd_matrix(matrix_c);
    if (oracle->parsed()) return cmd_oracle(spec_file, problem_file, samples, points, oracle_c);
    if (frontier->parsed()) return cmd_frontier(problem_file, spec_files, frontier_c);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
