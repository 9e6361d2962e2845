// Command-line front end.
//
//   oblisat check [--mode M] [--timeout S] [--witness] [--stats] "G (a -> F b)"
//   oblisat bench --bench random:count=500,len=100,atoms=3 --csv out.csv
//   oblisat dimacs problem.cnf
//
// Exit codes for check: 10 sat, 20 unsat, 30 unknown, 1 error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "oblisat/bench.hpp"
#include "oblisat/decide.hpp"
#include "oblisat/sat_solver.hpp"
#include "oblisat/transition_system.hpp"

namespace {

using namespace oblisat;

struct BenchSpec {
  std::string family;
  std::map<std::string, std::uint64_t> params;
};

BenchSpec parse_bench_spec(const std::string& text) {
  BenchSpec spec;
  auto colon = text.find(':');
  spec.family = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::string params = text.substr(colon + 1);
  std::stringstream ss(params);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--bench", "expected key=value: " + item);
    spec.params[item.substr(0, eq)] = std::stoull(item.substr(eq + 1));
  }
  return spec;
}

std::vector<CorpusItem> generate_corpus(const BenchSpec& spec,
                                        std::uint64_t seed) {
  auto param = [&](const std::string& key, std::uint64_t def) {
    auto it = spec.params.find(key);
    return it == spec.params.end() ? def : it->second;
  };
  std::vector<CorpusItem> items;
  if (spec.family == "random") {
    std::uint64_t count = param("count", 10);
    std::uint32_t len = static_cast<std::uint32_t>(param("len", 100));
    std::uint32_t atoms = static_cast<std::uint32_t>(param("atoms", 3));
    for (std::uint64_t i = 0; i < count; ++i)
      items.push_back({"random-" + std::to_string(i), "random",
                       gen_random(len, atoms, seed + i)});
  } else if (spec.family == "conj") {
    std::uint64_t count = param("count", 10);
    std::uint32_t n = static_cast<std::uint32_t>(param("n", 5));
    for (std::uint64_t i = 0; i < count; ++i)
      items.push_back({"conj-" + std::to_string(i), "conj",
                       gen_conjunction(n, seed + i)});
  } else if (spec.family == "C" || spec.family == "E" || spec.family == "U") {
    std::uint32_t n = static_cast<std::uint32_t>(param("n", 10));
    SynPtr f = spec.family == "C"   ? gen_family_c(n)
               : spec.family == "E" ? gen_family_e(n)
                                    : gen_family_u(n);
    items.push_back({spec.family + "-" + std::to_string(n), spec.family, f});
  } else {
    throw CLI::ValidationError("--bench", "unknown family: " + spec.family);
  }
  return items;
}

int cmd_check(const std::string& formula_text, const std::string& file,
              const CheckConfig& cfg, bool want_witness, bool want_stats,
              const std::string& dot_path) {
  std::string text = formula_text;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "error: cannot read " << file << "\n";
      return 1;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  if (text.empty()) {
    std::cerr << "error: no formula given\n";
    return 1;
  }

  SynPtr input = parse_syntax(text);
  CheckRun run = run_check(*input, cfg);

  std::cout << to_string(run.verdict.status) << "\n";
  if (want_witness && run.verdict.witness)
    std::cout << format_lasso(*run.arena, *run.verdict.witness) << "\n";
  if (run.verdict.heuristic) {
    std::cout << "reason: projection condition "
              << run.verdict.heuristic->condition;
    if (run.verdict.heuristic->position)
      std::cout << " at position " << *run.verdict.heuristic->position;
    std::cout << " refutes: " << run.verdict.heuristic->projection << "\n";
  }
  if (run.verdict.search) {
    std::cout << "reason: exhausted search, states="
              << run.verdict.search->states
              << " sccs=" << run.verdict.search->sccs << "\n";
  }
  if (run.verdict.cause)
    std::cout << "cause: " << to_string(*run.verdict.cause) << "\n";
  if (want_stats) {
    std::cout << "method: " << to_string(run.verdict.method) << "\n"
              << "sat-calls: " << run.stats.sat_solver_calls << "\n"
              << "states: " << run.stats.states_expanded << "\n"
              << "sccs: " << run.stats.sccs_examined << "\n"
              << "time-of-ms: " << run.stats.of_ms << "\n"
              << "time-heuristic-ms: " << run.stats.heuristic_ms << "\n"
              << "time-search-ms: " << run.stats.search_ms << "\n"
              << "time-total-ms: " << run.stats.total_ms << "\n";
  }
  if (!dot_path.empty()) {
    Arena dot_arena;
    NodeId dphi = dot_arena.tag(to_nnf(dot_arena, *input));
    ExpandLimits limits{cfg.expand_cap, cfg.state_cap};
    TransitionSystem ts(dot_arena, dphi, limits);
    try {
      ts.explore_all(nullptr);
    } catch (const ResourceLimitError& e) {
      std::cerr << "warning: partial graph (" << to_string(e.kind()) << ")\n";
    }
    std::ofstream out(dot_path);
    if (!out) {
      std::cerr << "error: cannot write " << dot_path << "\n";
      return 1;
    }
    out << ts.to_dot();
  }

  switch (run.verdict.status) {
    case Status::Sat: return 10;
    case Status::Unsat: return 20;
    case Status::Unknown: return 30;
  }
  return 1;
}

int cmd_bench(const std::vector<std::string>& files,
              const std::string& bench_spec, std::uint64_t seed,
              const CorpusOptions& opts, const std::string& csv_path) {
  std::vector<CorpusItem> items;
  for (const std::string& f : files) {
    try {
      auto more = load_corpus_file(f);
      items.insert(items.end(), more.begin(), more.end());
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << " (continuing)\n";
    }
  }
  if (!bench_spec.empty()) {
    auto more = generate_corpus(parse_bench_spec(bench_spec), seed);
    items.insert(items.end(), more.begin(), more.end());
  }
  if (items.empty()) {
    std::cerr << "error: nothing to run\n";
    return 1;
  }

  std::ofstream csv;
  std::ostream* csv_out = nullptr;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) {
      std::cerr << "error: cannot write " << csv_path << "\n";
      return 1;
    }
    csv_out = &csv;
  }
  std::vector<BenchRecord> records;
  CorpusSummary s = run_corpus(items, opts, records, csv_out);
  std::cout << "total=" << records.size() << " sat=" << s.sat
            << " unsat=" << s.unsat << " unknown=" << s.unknown
            << " errors=" << s.errors << "\n";
  return 0;
}

int cmd_dimacs(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return 1;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  ClauseList clauses = read_dimacs(ss.str());
  CnfResult r = solve_cnf(clauses);
  if (!r.sat) {
    std::cout << "UNSAT\n";
    return 20;
  }
  std::cout << "SAT\n";
  for (int v = 1; v <= clauses.num_vars; ++v)
    std::cout << (r.values[v] ? v : -v) << " ";
  std::cout << "0\n";
  return 10;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTL satisfiability checker"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "decide one formula");
  std::string formula_text, file, mode_str = "auto", dot_path;
  CheckConfig cfg;
  bool want_witness = false, want_stats = false;
  check->add_option("formula", formula_text, "LTL formula");
  check->add_option("--file", file, "read the formula from a file");
  check->add_option("--mode", mode_str,
                    "auto|of-only|unsat-only|full-only (default auto)");
  check->add_option("--timeout", cfg.timeout_seconds, "seconds, 0 = none");
  check->add_option("--state-cap", cfg.state_cap, "transition-system states");
  check->add_option("--olg-cap", cfg.olg_cap, "obligation-set size guard");
  check->add_flag("--witness", want_witness, "print a model on sat");
  check->add_flag("--stats", want_stats, "print run statistics");
  check->add_option("--dot", dot_path, "dump the transition system as DOT");
  check->add_flag("--external-sat", cfg.external_sat,
                  "use the solver named by $OBLI_SAT_CMD");

  // bench
  auto* bench = app.add_subcommand("bench", "run a corpus and emit CSV");
  std::vector<std::string> bench_files;
  std::string bench_spec, csv_path, bench_mode = "auto";
  std::uint64_t seed = 0;
  CorpusOptions opts;
  bench->add_option("files", bench_files, "formula files (one per line)");
  bench->add_option("--bench", bench_spec,
                    "family:params, e.g. random:count=500,len=100,atoms=3 or "
                    "C:n=20 or conj:count=10,n=5");
  bench->add_option("--csv", csv_path, "CSV output path");
  bench->add_option("--seed", seed, "generator seed");
  bench->add_option("--timeout", opts.check.timeout_seconds,
                    "per-formula timeout in seconds");
  bench->add_option("--workers", opts.workers, "worker threads (default 1)");
  bench->add_option("--mode", bench_mode, "pipeline mode");
  bench->add_flag("--external-sat", opts.check.external_sat,
                  "use the solver named by $OBLI_SAT_CMD");

  // dimacs
  auto* dimacs = app.add_subcommand(
      "dimacs", "solve a DIMACS CNF file (usable as $OBLI_SAT_CMD)");
  std::string dimacs_path;
  dimacs->add_option("file", dimacs_path, "CNF path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      auto mode = mode_from_string(mode_str);
      if (!mode) {
        std::cerr << "error: unknown mode '" << mode_str << "'\n";
        return 1;
      }
      cfg.mode = *mode;
      return cmd_check(formula_text, file, cfg, want_witness, want_stats,
                       dot_path);
    }
    if (bench->parsed()) {
      auto mode = mode_from_string(bench_mode);
      if (!mode) {
        std::cerr << "error: unknown mode '" << bench_mode << "'\n";
        return 1;
      }
      opts.check.mode = *mode;
      return cmd_bench(bench_files, bench_spec, seed, opts, csv_path);
    }
    if (dimacs->parsed()) return cmd_dimacs(dimacs_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
