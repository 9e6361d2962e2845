// Benchmark formula generators, the corpus runner, and CSV records.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oblisat/decide.hpp"
#include "oblisat/parser.hpp"

namespace oblisat {

/// Uniform sample of the NNF grammar (literals, X, U, R, &, |) with exactly
/// `length` nodes over atoms a1..a<num_atoms>. Deterministic per seed. The
/// returned tree is raw: parsing its printed form may merge nodes.
SynPtr gen_random(std::uint32_t length, std::uint32_t num_atoms,
                  std::uint64_t seed);

/// Conjunction of n specification-pattern instances (absence, existence,
/// universality, response, precedence), each over fresh atoms.
SynPtr gen_conjunction(std::uint32_t n, std::uint64_t seed);

/// Scalable families: C(n) = AND_i (G ai | F bi), E(n) = AND_i F ai,
/// U(n) = (..((a1 U a2) U a3)..) U an.
SynPtr gen_family_c(std::uint32_t n);
SynPtr gen_family_e(std::uint32_t n);
SynPtr gen_family_u(std::uint32_t n);

struct BenchRecord {
  std::string id;
  std::string family;
  std::uint32_t length = 0;
  std::uint32_t atoms = 0;
  std::string verdict;   // sat | unsat | unknown
  std::string method;
  double wall_ms = 0;
  std::uint64_t solver_calls = 0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

std::string csv_header();
std::string to_csv_row(const BenchRecord& r);
/// Parses one row written by to_csv_row. Returns nullopt for the header or
/// comment lines.
std::optional<BenchRecord> parse_csv_row(const std::string& line);

struct CorpusItem {
  std::string id;
  std::string family;
  SynPtr formula;
};

struct CorpusOptions {
  CheckConfig check;
  std::size_t workers = 1;
};

struct CorpusSummary {
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t unknown = 0;
  std::size_t errors = 0;
};

/// Runs every item, one worker per formula, and merges records in item
/// order. When csv_out is given, the header and one row per record are
/// flushed as results become available in order.
CorpusSummary run_corpus(const std::vector<CorpusItem>& items,
                         const CorpusOptions& opts,
                         std::vector<BenchRecord>& records,
                         std::ostream* csv_out = nullptr);

/// One formula per nonempty, non-# line.
std::vector<CorpusItem> load_corpus_file(const std::string& path);

}  // namespace oblisat
