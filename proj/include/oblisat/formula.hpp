// Canonical LTL formulas in negation normal form, hash-consed in an arena.
//
// Node kinds are True, False, Lit, Next, Until, Release, And, Or. F and G are
// parse-time sugar (F a = true U a, G a = false R a) and never appear as
// nodes. And/Or operands are flattened, sorted by structural order and
// duplicate-free; unit and complementary-literal simplifications are applied
// on construction, so equal canonical formulas always share one NodeId.

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "oblisat/common.hpp"

namespace oblisat {

enum class Kind : std::uint8_t {
  True,
  False,
  Lit,
  Next,
  Until,
  Release,
  And,
  Or,
};

struct Node {
  Kind kind;
  Lit lit;                    // Kind::Lit only
  std::vector<NodeId> kids;   // Next: 1, Until/Release: 2, And/Or: >= 2
  std::uint32_t size = 1;     // node count, children included
  std::uint64_t hash = 0;
};

class Arena {
 public:
  Arena();

  static constexpr NodeId kTrue = 0;
  static constexpr NodeId kFalse = 1;

  AtomId atom(const std::string& name);
  const std::string& atom_name(AtomId id) const { return atom_names_[id]; }
  std::size_t num_atoms() const { return atom_names_.size(); }

  /// Interns other's atoms in id order so ids agree between the two arenas.
  void adopt_atoms(const Arena& other);

  NodeId tt() const { return kTrue; }
  NodeId ff() const { return kFalse; }
  NodeId lit(AtomId atom, bool negated, TagSet tags = {});
  NodeId lit(const Lit& l) { return lit(l.atom, l.negated, l.tags); }
  NodeId next(NodeId sub);
  NodeId until(NodeId left, NodeId right);
  NodeId release(NodeId left, NodeId right);
  NodeId land(std::vector<NodeId> kids);
  NodeId lor(std::vector<NodeId> kids);

  const Node& node(NodeId id) const { return nodes_[id]; }
  Kind kind(NodeId id) const { return nodes_[id].kind; }
  std::size_t num_nodes() const { return nodes_.size(); }

  /// Total order used to sort And/Or operands; ids compare equal iff equal.
  bool structurally_less(NodeId a, NodeId b) const;

  std::uint32_t size(NodeId id) const { return nodes_[id].size; }

  /// Distinct subformulas of id, in first-visit order (id included).
  std::vector<NodeId> closure(NodeId id) const;

  std::vector<AtomId> atoms_of(NodeId id) const;

  /// Marks every literal occurrence with the until-subformulas whose right
  /// operand encloses it. Tag values are the NodeIds of the untagged until
  /// nodes, so they are stable for a fixed input formula.
  NodeId tag(NodeId id);

  /// Drops all tags and re-canonicalizes. tag() followed by erase_tags() is
  /// the identity.
  NodeId erase_tags(NodeId id);

  /// Top-level disjuncts (DF): the operand list when the root is an Or,
  /// else the formula itself.
  std::vector<NodeId> disjuncts(NodeId id) const;

  /// Top-level conjuncts (CF), dually.
  std::vector<NodeId> conjuncts(NodeId id) const;

  /// Canonical text form; re-parsing it yields the same node.
  std::string print(NodeId id) const;

  /// Like print() but renders literal tags (for DOT dumps and diagnostics).
  std::string print_tagged(NodeId id) const;

  /// Rollback support for bulk enumeration: forgets all nodes created after
  /// the checkpoint. Callers must not retain ids past the checkpoint.
  std::size_t checkpoint() const { return nodes_.size(); }
  void rollback(std::size_t checkpoint);

 private:
  NodeId intern(Node&& n);
  void print_rec(NodeId id, int min_level, bool with_tags,
                 std::string& out) const;

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::vector<NodeId>> interned_;
  std::vector<std::string> atom_names_;
  std::unordered_map<std::string, AtomId> atom_ids_;
};

}  // namespace oblisat
