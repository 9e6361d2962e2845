// Top-level satisfiability decision.
//
// Pipeline: (1) NNF + tagging; (2) if the obligation formula is
// satisfiable, the satisfying obligation repeated forever is a model;
// (3) if a positional projection is refutable, the formula is
// unsatisfiable; (4) otherwise the SCC search decides. In auto mode the two
// heuristic steps race the complete search on a second thread and the first
// validated verdict wins; restricted modes run a single step inline.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "oblisat/common.hpp"
#include "oblisat/formula.hpp"
#include "oblisat/lasso.hpp"
#include "oblisat/parser.hpp"

namespace oblisat {

enum class Mode { Auto, OfOnly, UnsatOnly, FullOnly };
enum class Status { Sat, Unsat, Unknown };

enum class Method {
  None,
  ObligationFastPath,  // satisfiable obligation formula
  PositionalHeuristic, // refuted projection
  SccSearch,           // accepting SCC found
  ExhaustedSearch,     // complete search without accepting SCC
};

const char* to_string(Status s);
const char* to_string(Method m);
const char* to_string(Mode m);
std::optional<Mode> mode_from_string(std::string_view s);

enum class UnknownCause { Timeout, StateCap, ExpandCap, Inconclusive };
const char* to_string(UnknownCause c);

struct HeuristicEvidence {
  int condition = 0;            // 1..4
  std::string projection;       // the refuted propositional formula
  std::optional<std::uint32_t> position;
};

struct SearchEvidence {
  std::size_t states = 0;
  std::size_t sccs = 0;
};

struct Verdict {
  Status status = Status::Unknown;
  Method method = Method::None;
  std::optional<Lasso> witness;                      // Sat
  std::optional<HeuristicEvidence> heuristic;        // Unsat via projection
  std::optional<SearchEvidence> search;              // Unsat via exhaustion
  std::optional<UnknownCause> cause;                 // Unknown
};

struct CheckConfig {
  double timeout_seconds = 0;  // 0 = none
  std::size_t state_cap = 100000;
  std::size_t olg_cap = 4096;
  std::size_t expand_cap = 100000;
  Mode mode = Mode::Auto;
  bool external_sat = false;  // route SAT calls through $OBLI_SAT_CMD
  bool validate_witness = true;
};

struct CheckStats {
  std::uint64_t sat_solver_calls = 0;
  std::size_t states_expanded = 0;
  std::size_t sccs_examined = 0;
  double of_ms = 0;
  double heuristic_ms = 0;
  double search_ms = 0;
  double total_ms = 0;
};

struct CheckRun {
  Verdict verdict;
  CheckStats stats;
  /// Arena the verdict's literals refer to, plus the canonical input. Every
  /// strategy works on an atom table aligned with this one, so witnesses and
  /// evidence can be interpreted (and re-validated) here.
  std::shared_ptr<Arena> arena;
  NodeId formula = 0;
};

inline const CheckStats& stats(const CheckRun& run) { return run.stats; }

/// Decides satisfiability of the parsed input. Deterministic per mode; in
/// auto mode the Sat/Unsat value is strategy-independent but the winning
/// method (and witness) may vary between runs.
CheckRun run_check(const Syntax& input, const CheckConfig& cfg = {});
CheckRun run_check(std::string_view text, const CheckConfig& cfg = {});

Verdict decide(std::string_view text, const CheckConfig& cfg = {});

struct OracleResult {
  bool sat = false;                // false = no model within the bound
  std::optional<Lasso> witness;
  std::size_t witness_total = 0;   // |stem| + |loop| of the first witness
};

/// Brute-force reference decision: enumerates every lasso over full
/// valuations of the formula's atoms (at most 3) with |stem| + |loop| <=
/// len_bound, in increasing total length, and tests each with lasso_check.
/// Complete for a large enough bound. Throws ResourceLimitError(Budget)
/// when the enumeration exceeds `budget` checks.
OracleResult oracle_decide(const Arena& arena, NodeId id,
                           std::size_t len_bound,
                           std::uint64_t budget = 200000000);

}  // namespace oblisat
