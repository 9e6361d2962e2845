// Obligation sets and obligation formulas.
//
// olg() materializes the set of literal-sets that must hold recurrently and
// is worst-case exponential; it exists as a testing oracle and stays behind
// a size guard. obligation_formula() is the linear-size propositional
// counterpart the checker actually uses; its DNF equals olg().

#pragma once

#include <cstddef>
#include <vector>

#include "oblisat/bool_expr.hpp"
#include "oblisat/common.hpp"
#include "oblisat/formula.hpp"

namespace oblisat {

inline constexpr std::size_t kDefaultOlgCap = 4096;

/// One obligation: a finite literal set, possibly with an explicit false
/// member (has_ff). Consistent iff ff-free and without complementary pairs.
struct Obligation {
  bool has_ff = false;
  LitSet lits;

  friend bool operator==(const Obligation&, const Obligation&) = default;
};

bool obligation_less(const Obligation& a, const Obligation& b);
bool obligation_consistent(const Obligation& o);

/// Sorted, duplicate-free.
using ObligationSet = std::vector<Obligation>;

/// Rules: tt -> {{}}, ff -> {{ff}}, literal -> {{l}}, X strips, U/R take the
/// right operand, | unions, & takes pairwise unions. Throws
/// ResourceLimitError(OlgCap) when an intermediate set exceeds cap.
ObligationSet olg(const Arena& arena, NodeId id,
                  std::size_t cap = kDefaultOlgCap);

/// Linear-size Boolean image under the same rules; literal tags are erased
/// (the SAT fast path reasons about plain atoms).
BPtr obligation_formula(const Arena& arena, NodeId id);

/// Same, but literal tags are kept. Acceptance checks on the transition
/// system match edge literals syntactically, tags included.
BPtr obligation_formula_tagged(const Arena& arena, NodeId id);

/// Disjunctive normal form as a set of literal-sets; duplicates removed, no
/// other simplification. Guarded like olg().
ObligationSet dnf(const BPtr& a, std::size_t cap = kDefaultOlgCap);

/// Extracts one DNF clause of `a` that the model satisfies wholly; requires
/// eval_bool(model, a) to hold. The result is a consistent obligation.
Obligation pick_obligation(const BPtr& a, const Assignment& model);

}  // namespace oblisat
