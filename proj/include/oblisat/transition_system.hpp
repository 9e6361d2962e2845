// Normal-form expansion and the on-the-fly transition system.
//
// States are canonical (tagged) formulas; an edge u --alpha--> v exists iff
// alpha & X v is a normal-form entry of u. Expansion drops entries whose
// label is propositionally inconsistent (tags disregarded). Satisfiability
// reduces to finding an SCC whose edge literals weakly satisfy the
// obligation formula of one of its states.

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "oblisat/bool_expr.hpp"
#include "oblisat/common.hpp"
#include "oblisat/formula.hpp"
#include "oblisat/lasso.hpp"

namespace oblisat {

struct NormalFormEntry {
  LitSet label;  // tagged literals, consistent after tag erasure
  NodeId next;

  friend bool operator==(const NormalFormEntry&,
                         const NormalFormEntry&) = default;
};

struct ExpandLimits {
  std::size_t expand_cap = 100000;  // entries per product
  std::size_t state_cap = 100000;
};

/// The six expansion rules. Entries come out sorted by (label, next) and
/// duplicate-free; inconsistent labels are dropped, en(false) is empty.
std::vector<NormalFormEntry> expand(Arena& arena, NodeId id,
                                    std::size_t cap = 100000);

using StateId = std::uint32_t;

struct Edge {
  StateId from;
  StateId to;
  LitSet label;
};

class TransitionSystem {
 public:
  TransitionSystem(Arena& arena, NodeId init, ExpandLimits limits = {});

  Arena& arena() { return arena_; }
  const Arena& arena() const { return arena_; }
  StateId initial() const { return 0; }
  std::size_t num_states() const { return states_.size(); }
  NodeId state_formula(StateId s) const { return states_[s]; }

  /// Expands the state if needed and returns its out-edge ids, in canonical
  /// entry order. Throws ResourceLimitError when a cap fires.
  std::span<const std::uint32_t> out(StateId s, RunContext* ctx = nullptr);

  bool expanded(StateId s) const { return expanded_[s]; }
  const Edge& edge(std::uint32_t e) const { return edges_[e]; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t states_expanded() const { return states_expanded_; }

  /// Drives expansion over everything reachable.
  void explore_all(RunContext* ctx = nullptr);

  std::string to_dot() const;

 private:
  StateId intern_state(NodeId f);

  Arena& arena_;
  ExpandLimits limits_;
  std::vector<NodeId> states_;
  std::unordered_map<NodeId, StateId> state_index_;
  std::vector<bool> expanded_;
  std::vector<std::vector<std::uint32_t>> out_edges_;
  std::vector<Edge> edges_;
  std::size_t states_expanded_ = 0;
  std::unordered_map<NodeId, std::vector<NormalFormEntry>> expansion_cache_;
};

/// Fully explores from the initial formula.
TransitionSystem explore(Arena& arena, NodeId init, ExpandLimits limits = {},
                         RunContext* ctx = nullptr);

struct SccInfo {
  std::vector<StateId> states;          // discovery-index order
  std::vector<std::uint32_t> edge_ids;  // internal edges, self-loops included
  LitSet literals;                      // union of internal edge labels
};

/// Maximal SCCs that contain at least one internal edge, in the order the
/// depth-first search completes them. Explores lazily as it walks.
std::vector<SccInfo> find_sccs(TransitionSystem& ts, RunContext* ctx = nullptr);

struct AcceptResult {
  bool accepted = false;
  StateId state = 0;  // the accepting member
};

/// First member (by discovery index) whose tagged obligation formula is
/// weakly satisfied by the SCC's literals.
AcceptResult scc_accepts(const SccInfo& scc, TransitionSystem& ts);

/// Witness for an accepted SCC: stem = labels of a shortest explored path
/// from the initial state, loop = labels of a closed walk through every
/// internal edge. Labels are tag-erased and completed to full valuations
/// (unconstrained atoms false) over the given atom set.
Lasso extract_witness(TransitionSystem& ts, const SccInfo& scc, StateId state,
                      const std::vector<AtomId>& atoms);

struct SearchOutcome {
  enum class Kind { Accepted, Exhausted } kind = Kind::Exhausted;
  std::optional<Lasso> witness;
  NodeId accepted_state = 0;
  std::size_t states = 0;
  std::size_t sccs_examined = 0;
};

/// On-the-fly search: runs the SCC decomposition over the lazily expanded
/// graph and stops at the first accepting SCC. Throws ResourceLimitError on
/// cap/timeout/cancellation.
SearchOutcome search_accepting_scc(TransitionSystem& ts,
                                   const std::vector<AtomId>& witness_atoms,
                                   RunContext* ctx = nullptr);

}  // namespace oblisat
