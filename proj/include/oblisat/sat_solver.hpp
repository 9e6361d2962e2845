// Complete propositional satisfiability: CNF conversion with fresh selector
// variables, a small DPLL solver with watched literals, and DIMACS interop
// for driving an external solver named by OBLI_SAT_CMD.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "oblisat/bool_expr.hpp"
#include "oblisat/common.hpp"

namespace oblisat {

/// DIMACS-style clause set: literals are nonzero ints, variable v is
/// 1-based, -v its negation.
struct ClauseList {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// CNF of a formula plus the variable <-> atom correspondence. Variables
/// 1..var_atoms.size() are the original atoms (sorted by id); higher
/// variables are Tseitin selectors.
struct Cnf {
  ClauseList clauses;
  std::vector<AtomId> var_atoms;
};

/// Equisatisfiable clause set; a model restricted to the original atoms
/// models the input.
Cnf to_cnf(const BPtr& a);

struct SatResult {
  bool sat = false;
  Assignment model;  // meaningful when sat
};

/// Complete decision. Tags on literals are erased first: tagged copies of an
/// atom are one variable. Deterministic: branches on the lowest unassigned
/// variable, trying true first. The model covers every atom of the formula.
SatResult solve(const BPtr& a, RunContext* ctx = nullptr);

/// Raw CNF decision used by solve() and the DIMACS helper tool.
struct CnfResult {
  bool sat = false;
  std::vector<bool> values;  // 1-based by variable when sat
};
CnfResult solve_cnf(const ClauseList& clauses, RunContext* ctx = nullptr);

std::string write_dimacs(const ClauseList& clauses);
ClauseList read_dimacs(std::string_view text);

/// Parses a solver result file: first line SAT or UNSAT, then an optional
/// model line of signed ints terminated by 0. Throws on malformed input.
CnfResult read_dimacs_result(std::string_view text);

/// Writes the CNF to a temp file, runs `cmd <path>` and parses its stdout as
/// a DIMACS result.
CnfResult solve_with_command(const ClauseList& clauses,
                             const std::string& cmd);

/// solve() routed through an external solver command.
SatResult solve_external(const BPtr& a, const std::string& cmd,
                         RunContext* ctx = nullptr);

}  // namespace oblisat
