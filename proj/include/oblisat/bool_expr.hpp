// Propositional formulas with negation only at the literals, used for
// obligation formulas and positional projections. Operand lists are
// flattened, sorted and duplicate-free; true/false are ordinary leaves and
// are never absorbed (obligation-set computations rely on the raw shape).

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "oblisat/common.hpp"
#include "oblisat/formula.hpp"

namespace oblisat {

struct BExpr;
using BPtr = std::shared_ptr<const BExpr>;

struct BExpr {
  enum class K : std::uint8_t { True, False, Lit, And, Or };

  K k;
  Lit lit;                  // K::Lit only
  std::vector<BPtr> kids;   // And/Or only, >= 2 entries
};

BPtr btrue();
BPtr bfalse();
BPtr blit(Lit l);
BPtr band(std::vector<BPtr> kids);
BPtr bor(std::vector<BPtr> kids);

bool bexpr_equal(const BPtr& a, const BPtr& b);
bool bexpr_less(const BPtr& a, const BPtr& b);

/// Syntactic weak satisfaction: a literal holds iff it is a member of S
/// (exact identity, tags included); S may be inconsistent. True always
/// holds, false never does.
bool weak_sat(const LitSet& s, const BPtr& a);

using Assignment = std::map<AtomId, bool>;

/// Ordinary two-valued evaluation under a total atom assignment; literal
/// tags are ignored (tagged copies of an atom share its value).
bool eval_bool(const Assignment& assignment, const BPtr& a);

LitSet bexpr_literals(const BPtr& a);
std::vector<AtomId> bexpr_atoms(const BPtr& a);

std::string bexpr_to_string(const Arena& arena, const BPtr& a);

}  // namespace oblisat
