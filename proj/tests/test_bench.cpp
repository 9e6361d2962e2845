#include "doctest.h"
#include <fstream>
#include <functional>

#include <sstream>

#include "oblisat/bench.hpp"
#include "oblisat/obligation.hpp"

using namespace oblisat;

TEST_CASE("gen_random hits the node count exactly and is deterministic") {
  SynPtr f = gen_random(100, 3, 42);
  CHECK(f->node_count() == 100);
  CHECK(gen_random(1, 1, 7)->node_count() == 1);

  SynPtr g1 = gen_random(50, 3, 99);
  SynPtr g2 = gen_random(50, 3, 99);
  CHECK(g1->to_string() == g2->to_string());
  CHECK(gen_random(50, 3, 100)->to_string() != g1->to_string());

  for (std::uint32_t len = 1; len <= 40; ++len)
    CHECK(gen_random(len, 2, len)->node_count() == len);
}

TEST_CASE("gen_random stays within its atom set") {
  SynPtr f = gen_random(60, 2, 5);
  std::function<void(const Syntax&)> walk = [&](const Syntax& s) {
    if (s.op == Syntax::Op::Atom) CHECK((s.atom == "a1" || s.atom == "a2"));
    for (const auto& k : s.kids) walk(*k);
  };
  walk(*f);
}

TEST_CASE("gen_conjunction produces n conjuncts deterministically") {
  SynPtr one = gen_conjunction(1, 3);
  CHECK(one->op != Syntax::Op::And);

  SynPtr three = gen_conjunction(3, 3);
  // Right number of pattern instances: count top-level And spine leaves.
  std::size_t leaves = 0;
  std::function<void(const Syntax&)> spine = [&](const Syntax& s) {
    if (s.op == Syntax::Op::And) {
      spine(*s.kids[0]);
      spine(*s.kids[1]);
    } else {
      ++leaves;
    }
  };
  spine(*three);
  CHECK(leaves == 3);
  CHECK(gen_conjunction(3, 3)->to_string() == three->to_string());
}

TEST_CASE("the C family is decided sat by the obligation fast path") {
  for (std::uint32_t n : {1u, 5u}) {
    CheckRun run = run_check(*gen_family_c(n), CheckConfig{.mode = Mode::OfOnly});
    CHECK(run.verdict.status == Status::Sat);
    CHECK(run.verdict.method == Method::ObligationFastPath);
  }
}

TEST_CASE("CSV rows round trip") {
  BenchRecord r;
  r.id = "random-17";
  r.family = "random";
  r.length = 100;
  r.atoms = 3;
  r.verdict = "sat";
  r.method = "of-fast-path";
  r.wall_ms = 1.25;
  r.solver_calls = 3;
  auto back = parse_csv_row(to_csv_row(r));
  REQUIRE(back.has_value());
  CHECK(*back == r);

  CHECK(!parse_csv_row(csv_header()).has_value());
  CHECK(!parse_csv_row("# summary: sat=1").has_value());
}

TEST_CASE("run_corpus merges records in order and counts verdicts") {
  std::vector<CorpusItem> items;
  items.push_back({"t0", "unit", parse_syntax("G a")});
  items.push_back({"t1", "unit", parse_syntax("F a & G !a")});
  items.push_back({"t2", "unit", parse_syntax("a U b")});
  CorpusOptions opts;
  opts.workers = 3;
  std::ostringstream csv;
  std::vector<BenchRecord> records;
  CorpusSummary s = run_corpus(items, opts, records, &csv);
  CHECK(s.sat == 2);
  CHECK(s.unsat == 1);
  CHECK(s.unknown == 0);
  REQUIRE(records.size() == 3);
  CHECK(records[0].id == "t0");
  CHECK(records[1].id == "t1");
  CHECK(records[2].id == "t2");
  CHECK(records[0].verdict == "sat");
  CHECK(records[1].verdict == "unsat");

  // CSV carries the header, three parseable rows in order, and a summary.
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == csv_header());
  for (int i = 0; i < 3; ++i) {
    std::getline(in, line);
    auto rec = parse_csv_row(line);
    REQUIRE(rec.has_value());
    CHECK(*rec == records[i]);
  }
  std::getline(in, line);
  CHECK(line.starts_with("# summary:"));
}

TEST_CASE("run_corpus survives per-item failures and timeouts") {
  std::vector<CorpusItem> items;
  items.push_back({"ok", "unit", parse_syntax("G a")});
  // Forced timeout: heuristics are blind and the search space is too big.
  std::string hard = "G ((!a) | X a) & a & F !a";
  for (int i = 1; i <= 7; ++i)
    hard += " & (G F c" + std::to_string(i) + " | G F d" + std::to_string(i) +
            ")";
  items.push_back({"slow", "unit", parse_syntax(hard)});
  CorpusOptions opts;
  opts.check.timeout_seconds = 0.1;
  std::vector<BenchRecord> records;
  CorpusSummary s = run_corpus(items, opts, records, nullptr);
  CHECK(s.sat == 1);
  CHECK(s.unknown == 1);
  CHECK(records[1].verdict == "unknown");
}

TEST_CASE("corpus files ignore blanks and comments") {
  std::string path = "/tmp/oblisat_corpus_test.txt";
  {
    std::ofstream out(path);
    out << "# comment\n\nG a\na U b\n";
  }
  auto items = load_corpus_file(path);
  REQUIRE(items.size() == 2);
  CHECK(items[0].formula->op == Syntax::Op::Globally);
  std::remove(path.c_str());
}
