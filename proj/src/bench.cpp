#include "oblisat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace oblisat {

namespace {

using Op = Syntax::Op;

SynPtr atom_ref(std::uint32_t i) {
  return Syntax::mk_atom("a" + std::to_string(i));
}

SynPtr gen_rec(std::uint32_t n, std::uint32_t num_atoms, std::mt19937_64& rng) {
  if (n == 1) return atom_ref(std::uniform_int_distribution<std::uint32_t>(
                     1, num_atoms)(rng));
  if (n == 2) {
    // Either X a or !a; both have two nodes.
    SynPtr leaf = gen_rec(1, num_atoms, rng);
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0)
      return Syntax::mk(Op::Next, {leaf});
    return Syntax::mk(Op::Not, {leaf});
  }
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0:
      return Syntax::mk(Op::Next, {gen_rec(n - 1, num_atoms, rng)});
    default: {
      Op op;
      switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: op = Op::Until; break;
        case 1: op = Op::Release; break;
        case 2: op = Op::And; break;
        default: op = Op::Or; break;
      }
      std::uint32_t left = std::uniform_int_distribution<std::uint32_t>(
          1, n - 2)(rng);
      SynPtr l = gen_rec(left, num_atoms, rng);
      SynPtr r = gen_rec(n - 1 - left, num_atoms, rng);
      return Syntax::mk(op, {l, r});
    }
  }
}

}  // namespace

SynPtr gen_random(std::uint32_t length, std::uint32_t num_atoms,
                  std::uint64_t seed) {
  if (length < 1 || num_atoms < 1)
    throw std::invalid_argument("gen_random: length and atoms must be >= 1");
  std::mt19937_64 rng(seed);
  return gen_rec(length, num_atoms, rng);
}

namespace {

SynPtr pattern_instance(int which, std::uint32_t index) {
  SynPtr p = Syntax::mk_atom("p" + std::to_string(index));
  SynPtr q = Syntax::mk_atom("q" + std::to_string(index));
  switch (which) {
    case 0:  // absence
      return Syntax::mk(Op::Globally, {Syntax::mk(Op::Not, {p})});
    case 1:  // existence
      return Syntax::mk(Op::Finally, {p});
    case 2:  // universality
      return Syntax::mk(Op::Globally, {p});
    case 3:  // response
      return Syntax::mk(
          Op::Globally,
          {Syntax::mk(Op::Implies, {p, Syntax::mk(Op::Finally, {q})})});
    default:  // precedence
      return Syntax::mk(Op::Until, {Syntax::mk(Op::Not, {q}), p});
  }
}

}  // namespace

SynPtr gen_conjunction(std::uint32_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_conjunction: n must be >= 1");
  std::mt19937_64 rng(seed);
  SynPtr out;
  for (std::uint32_t i = 1; i <= n; ++i) {
    int which = std::uniform_int_distribution<int>(0, 4)(rng);
    SynPtr inst = pattern_instance(which, i);
    out = out ? Syntax::mk(Op::And, {out, inst}) : inst;
  }
  return out;
}

SynPtr gen_family_c(std::uint32_t n) {
  SynPtr out;
  for (std::uint32_t i = 1; i <= n; ++i) {
    SynPtr conjunct = Syntax::mk(
        Op::Or, {Syntax::mk(Op::Globally, {atom_ref(i)}),
                 Syntax::mk(Op::Finally,
                            {Syntax::mk_atom("b" + std::to_string(i))})});
    out = out ? Syntax::mk(Op::And, {out, conjunct}) : conjunct;
  }
  return out;
}

SynPtr gen_family_e(std::uint32_t n) {
  SynPtr out;
  for (std::uint32_t i = 1; i <= n; ++i) {
    SynPtr conjunct = Syntax::mk(Op::Finally, {atom_ref(i)});
    out = out ? Syntax::mk(Op::And, {out, conjunct}) : conjunct;
  }
  return out;
}

SynPtr gen_family_u(std::uint32_t n) {
  SynPtr out = atom_ref(1);
  for (std::uint32_t i = 2; i <= n; ++i)
    out = Syntax::mk(Op::Until, {out, atom_ref(i)});
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string fmt_double(double d) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, end);
}

}  // namespace

std::string csv_header() {
  return "id,family,length,atoms,verdict,method,wall_ms,solver_calls";
}

std::string to_csv_row(const BenchRecord& r) {
  std::string out;
  out += r.id;
  out += ',';
  out += r.family;
  out += ',';
  out += std::to_string(r.length);
  out += ',';
  out += std::to_string(r.atoms);
  out += ',';
  out += r.verdict;
  out += ',';
  out += r.method;
  out += ',';
  out += fmt_double(r.wall_ms);
  out += ',';
  out += std::to_string(r.solver_calls);
  return out;
}

std::optional<BenchRecord> parse_csv_row(const std::string& line) {
  if (line.empty() || line[0] == '#' || line == csv_header())
    return std::nullopt;
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  if (fields.size() != 8) throw std::runtime_error("malformed CSV row: " + line);
  BenchRecord r;
  r.id = fields[0];
  r.family = fields[1];
  r.length = static_cast<std::uint32_t>(std::stoul(fields[2]));
  r.atoms = static_cast<std::uint32_t>(std::stoul(fields[3]));
  r.verdict = fields[4];
  r.method = fields[5];
  r.wall_ms = std::stod(fields[6]);
  r.solver_calls = std::stoull(fields[7]);
  return r;
}

// ---------------------------------------------------------------------------
// Corpus runner

namespace {

std::uint32_t count_atoms(const Syntax& s) {
  std::vector<std::string> names;
  std::function<void(const Syntax&)> walk = [&](const Syntax& n) {
    if (n.op == Op::Atom) names.push_back(n.atom);
    for (const auto& k : n.kids) walk(*k);
  };
  walk(s);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return static_cast<std::uint32_t>(names.size());
}

BenchRecord run_one(const CorpusItem& item, const CheckConfig& cfg) {
  BenchRecord r;
  r.id = item.id;
  r.family = item.family;
  r.length = static_cast<std::uint32_t>(item.formula->node_count());
  r.atoms = count_atoms(*item.formula);
  CheckRun run = run_check(*item.formula, cfg);
  r.verdict = to_string(run.verdict.status);
  r.method = to_string(run.verdict.method);
  r.wall_ms = run.stats.total_ms;
  r.solver_calls = run.stats.sat_solver_calls;
  return r;
}

}  // namespace

CorpusSummary run_corpus(const std::vector<CorpusItem>& items,
                         const CorpusOptions& opts,
                         std::vector<BenchRecord>& records,
                         std::ostream* csv_out) {
  records.assign(items.size(), {});
  std::vector<char> done(items.size(), 0);
  std::mutex m;
  std::atomic<std::size_t> next{0};
  std::size_t flushed = 0;
  CorpusSummary summary;

  if (csv_out) *csv_out << csv_header() << "\n" << std::flush;

  auto flush_ready = [&]() {
    // caller holds m
    while (flushed < items.size() && done[flushed]) {
      if (csv_out) *csv_out << to_csv_row(records[flushed]) << "\n" << std::flush;
      ++flushed;
    }
  };

  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      BenchRecord r;
      try {
        r = run_one(items[i], opts.check);
      } catch (const std::exception& e) {
        r.id = items[i].id;
        r.family = items[i].family;
        r.verdict = "unknown";
        r.method = std::string("error:") + e.what();
      }
      std::lock_guard<std::mutex> lk(m);
      if (r.verdict == "sat") ++summary.sat;
      else if (r.verdict == "unsat") ++summary.unsat;
      else ++summary.unknown;
      if (r.method.starts_with("error:")) ++summary.errors;
      records[i] = std::move(r);
      done[i] = 1;
      flush_ready();
    }
  };

  std::size_t nworkers = std::max<std::size_t>(1, opts.workers);
  nworkers = std::min(nworkers, std::max<std::size_t>(1, items.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < nworkers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  {
    std::lock_guard<std::mutex> lk(m);
    flush_ready();
    if (csv_out)
      *csv_out << "# summary: sat=" << summary.sat
               << " unsat=" << summary.unsat << " unknown=" << summary.unknown
               << "\n"
               << std::flush;
  }
  return summary;
}

std::vector<CorpusItem> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::vector<CorpusItem> items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(
                                   trimmed.back())))
      trimmed.pop_back();
    std::size_t start = 0;
    while (start < trimmed.size() &&
           std::isspace(static_cast<unsigned char>(trimmed[start])))
      ++start;
    trimmed = trimmed.substr(start);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    items.push_back({path + ":" + std::to_string(lineno), "file",
                     parse_syntax(trimmed)});
  }
  return items;
}

}  // namespace oblisat
