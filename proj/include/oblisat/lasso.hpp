// Ultimately periodic words stem . loop^omega and exact LTL evaluation over
// them. Letters are consistent literal sets; an atom a letter does not
// mention is false.

#pragma once

#include <string>
#include <vector>

#include "oblisat/common.hpp"
#include "oblisat/formula.hpp"

namespace oblisat {

struct Lasso {
  std::vector<LitSet> stem;
  std::vector<LitSet> loop;  // nonempty

  bool well_formed() const;
};

/// Exact satisfaction of the formula at position 0. Evaluated bottom-up per
/// subformula over the stem positions plus one loop copy; Until/Release take
/// their fixpoints around the loop cycle (least for U, greatest for R).
/// Literal tags are ignored, so the check is tag-invariant.
bool lasso_check(const Arena& arena, NodeId id, const Lasso& w);

/// Letter truth of one literal (tags ignored; unmentioned atoms false).
bool letter_satisfies(const LitSet& letter, const Lit& l);

/// Erases tags and completes a partial letter to a full valuation over the
/// given atoms, assigning unconstrained atoms false. Throws SoundnessError
/// when the erased set is inconsistent.
LitSet complete_letter(const LitSet& partial, const std::vector<AtomId>& atoms);

std::string format_lasso(const Arena& arena, const Lasso& w);

}  // namespace oblisat
