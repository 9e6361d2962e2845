// Obligation formulas with position and the projection-based
// unsatisfiability heuristic.
//
// Each leaf carries <prop, start, duration>: the literal, the position from
// which it must hold (or undetermined), and whether it holds at that
// position only (cur), from it onwards (geq), or at infinitely many
// positions (inf). Projections replace positionally irrelevant leaves by
// true, yielding plain propositional formulas that a SAT solver can refute.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "oblisat/bool_expr.hpp"
#include "oblisat/common.hpp"
#include "oblisat/formula.hpp"

namespace oblisat {

enum class Duration : std::uint8_t { Cur, Inf, Geq };

struct PosLit {
  Lit prop;  // tags erased
  std::optional<std::uint32_t> start;  // nullopt = undetermined
  Duration duration = Duration::Cur;

  friend bool operator==(const PosLit&, const PosLit&) = default;
};

bool poslit_less(const PosLit& a, const PosLit& b);

struct PosExpr;
using PPtr = std::shared_ptr<const PosExpr>;

/// And/Or tree over positional leaves; True/False appear where the source
/// formula had constants.
struct PosExpr {
  enum class K : std::uint8_t { True, False, Leaf, And, Or };

  K k;
  PosLit leaf;             // K::Leaf only
  std::vector<PPtr> kids;  // And/Or only
};

PPtr ptrue();
PPtr pfalse();
PPtr pleaf(PosLit l);
PPtr pand(std::vector<PPtr> kids);
PPtr por(std::vector<PPtr> kids);

enum class TempOp : std::uint8_t { X, U, R, G };

/// The six-shape update table. Total over shape x {X,U,R,G} and closed over
/// the six shapes.
PosLit pos_apply(PosLit l, TempOp op);

/// Leaves of the tree, sorted and duplicate-free.
std::vector<PosLit> pos_leaves(const PPtr& t);

/// The positional obligation formula. G is recognized as (false R psi);
/// disjunction weakens both sides to <prop, undetermined, cur> unless every
/// leaf across all operands shares one start.
PPtr ofp(const Arena& arena, NodeId id);

/// Projection at position i: a leaf survives iff it starts at i, or started
/// earlier and holds from its start onwards.
BPtr project_at(const PPtr& t, std::uint32_t i);

/// Projection under a chosen leaf set: leaves in S survive, others become
/// true.
BPtr project_abstract(const PPtr& t, const std::vector<PosLit>& S);

struct HeuristicResult {
  bool proved_unsat = false;
  int condition = 0;                      // 1..4
  BPtr projection;                        // the refuted projection
  std::optional<std::uint32_t> position;  // condition 1 only
};

/// Satisfiability callback: returns whether the projection is satisfiable.
/// Defaults to the built-in solver; the pipeline substitutes the external
/// one when configured.
using ProjectionSat = std::function<bool(const BPtr&)>;

/// Tries the four refutation conditions with S = all geq-duration leaves;
/// "== false" means propositionally unsatisfiable. Any hit is a proof of
/// unsatisfiability; absence of a hit means nothing.
HeuristicResult unsat_heuristic(const Arena& arena, NodeId id,
                                RunContext* ctx = nullptr,
                                const ProjectionSat& sat = {});

std::string poslit_to_string(const Arena& arena, const PosLit& l);

}  // namespace oblisat
