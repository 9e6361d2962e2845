#include "oblisat/formula.hpp"

#include <cassert>
#include <functional>
#include <map>

namespace oblisat {

bool consistent(const LitSet& s) {
  // Sorted by atom, so complementary pairs are adjacent per atom group.
  for (std::size_t i = 1; i < s.size(); ++i)
    if (complementary(s[i - 1], s[i])) return false;
  return true;
}

LitSet set_union(const LitSet& a, const LitSet& b) {
  LitSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out), lit_less);
  return out;
}

const char* to_string(ResourceKind k) {
  switch (k) {
    case ResourceKind::OlgCap: return "olg-cap";
    case ResourceKind::ExpandCap: return "expand-cap";
    case ResourceKind::StateCap: return "state-cap";
    case ResourceKind::Timeout: return "timeout";
    case ResourceKind::Budget: return "budget";
    case ResourceKind::Cancelled: return "cancelled";
  }
  return "?";
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t node_hash(const Node& n) {
  std::uint64_t h = static_cast<std::uint64_t>(n.kind) + 1;
  if (n.kind == Kind::Lit) {
    h = mix(h, n.lit.atom);
    h = mix(h, n.lit.negated ? 2 : 3);
    for (NodeId t : n.lit.tags) h = mix(h, t + 11);
  }
  for (NodeId k : n.kids) h = mix(h, k + 5);
  return h;
}

bool same_node(const Node& a, const Node& b) {
  return a.kind == b.kind && a.lit == b.lit && a.kids == b.kids;
}

int kind_rank(Kind k) { return static_cast<int>(k); }

}  // namespace

Arena::Arena() {
  Node t{Kind::True, {}, {}, 1, 0};
  t.hash = node_hash(t);
  nodes_.push_back(t);
  interned_[t.hash].push_back(kTrue);
  Node f{Kind::False, {}, {}, 1, 0};
  f.hash = node_hash(f);
  nodes_.push_back(f);
  interned_[f.hash].push_back(kFalse);
}

AtomId Arena::atom(const std::string& name) {
  auto it = atom_ids_.find(name);
  if (it != atom_ids_.end()) return it->second;
  AtomId id = static_cast<AtomId>(atom_names_.size());
  atom_names_.push_back(name);
  atom_ids_.emplace(name, id);
  return id;
}

void Arena::adopt_atoms(const Arena& other) {
  for (const std::string& name : other.atom_names_) atom(name);
}

NodeId Arena::intern(Node&& n) {
  n.hash = node_hash(n);
  n.size = 1;
  for (NodeId k : n.kids) n.size += nodes_[k].size;
  auto& bucket = interned_[n.hash];
  for (NodeId cand : bucket)
    if (same_node(nodes_[cand], n)) return cand;
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(n));
  bucket.push_back(id);
  return id;
}

void Arena::rollback(std::size_t checkpoint) {
  for (std::size_t i = checkpoint; i < nodes_.size(); ++i) {
    auto it = interned_.find(nodes_[i].hash);
    if (it == interned_.end()) continue;
    auto& bucket = it->second;
    std::erase(bucket, static_cast<NodeId>(i));
    if (bucket.empty()) interned_.erase(it);
  }
  nodes_.resize(checkpoint);
}

NodeId Arena::lit(AtomId atom, bool negated, TagSet tags) {
  Node n{Kind::Lit, Lit{atom, negated, std::move(tags)}, {}, 1, 0};
  return intern(std::move(n));
}

NodeId Arena::next(NodeId sub) {
  return intern(Node{Kind::Next, {}, {sub}, 1, 0});
}

NodeId Arena::until(NodeId left, NodeId right) {
  return intern(Node{Kind::Until, {}, {left, right}, 1, 0});
}

NodeId Arena::release(NodeId left, NodeId right) {
  return intern(Node{Kind::Release, {}, {left, right}, 1, 0});
}

bool Arena::structurally_less(NodeId a, NodeId b) const {
  if (a == b) return false;
  const Node& na = nodes_[a];
  const Node& nb = nodes_[b];
  if (na.kind != nb.kind) return kind_rank(na.kind) < kind_rank(nb.kind);
  if (na.kind == Kind::Lit) return lit_less(na.lit, nb.lit);
  std::size_t n = std::min(na.kids.size(), nb.kids.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (na.kids[i] == nb.kids[i]) continue;
    return structurally_less(na.kids[i], nb.kids[i]);
  }
  return na.kids.size() < nb.kids.size();
}

NodeId Arena::land(std::vector<NodeId> kids) {
  std::vector<NodeId> flat;
  flat.reserve(kids.size());
  for (NodeId k : kids) {
    if (kind(k) == Kind::And) {
      for (NodeId kk : nodes_[k].kids) flat.push_back(kk);
    } else {
      flat.push_back(k);
    }
  }
  std::vector<NodeId> out;
  out.reserve(flat.size());
  for (NodeId k : flat) {
    if (k == kFalse) return kFalse;
    if (k == kTrue) continue;
    out.push_back(k);
  }
  std::sort(out.begin(), out.end(),
            [this](NodeId a, NodeId b) { return structurally_less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // a & !a collapses to false regardless of tags.
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (kind(out[i]) != Kind::Lit) continue;
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (kind(out[j]) != Kind::Lit) continue;
      if (complementary(nodes_[out[i]].lit, nodes_[out[j]].lit)) return kFalse;
    }
  }
  if (out.empty()) return kTrue;
  if (out.size() == 1) return out[0];
  return intern(Node{Kind::And, {}, std::move(out), 1, 0});
}

NodeId Arena::lor(std::vector<NodeId> kids) {
  std::vector<NodeId> flat;
  flat.reserve(kids.size());
  for (NodeId k : kids) {
    if (kind(k) == Kind::Or) {
      for (NodeId kk : nodes_[k].kids) flat.push_back(kk);
    } else {
      flat.push_back(k);
    }
  }
  std::vector<NodeId> out;
  out.reserve(flat.size());
  for (NodeId k : flat) {
    if (k == kTrue) return kTrue;
    if (k == kFalse) continue;
    out.push_back(k);
  }
  std::sort(out.begin(), out.end(),
            [this](NodeId a, NodeId b) { return structurally_less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) return kFalse;
  if (out.size() == 1) return out[0];
  return intern(Node{Kind::Or, {}, std::move(out), 1, 0});
}

std::vector<NodeId> Arena::closure(NodeId id) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{id};
  std::unordered_map<NodeId, bool> seen;
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (seen[cur]) continue;
    seen[cur] = true;
    out.push_back(cur);
    for (NodeId k : nodes_[cur].kids) stack.push_back(k);
  }
  return out;
}

std::vector<NodeId> Arena::disjuncts(NodeId id) const {
  if (kind(id) == Kind::Or) return nodes_[id].kids;
  return {id};
}

std::vector<NodeId> Arena::conjuncts(NodeId id) const {
  if (kind(id) == Kind::And) return nodes_[id].kids;
  return {id};
}

std::vector<AtomId> Arena::atoms_of(NodeId id) const {
  std::vector<AtomId> out;
  for (NodeId n : closure(id))
    if (kind(n) == Kind::Lit) out.push_back(nodes_[n].lit.atom);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NodeId Arena::tag(NodeId id) {
  // env: sorted ids of the untagged until nodes whose right side encloses
  // the current position.
  std::function<NodeId(NodeId, const TagSet&)> rec =
      [&](NodeId cur, const TagSet& env) -> NodeId {
    const Node n = nodes_[cur];  // copy: land/lor below may grow nodes_
    switch (n.kind) {
      case Kind::True:
      case Kind::False:
        return cur;
      case Kind::Lit:
        return lit(n.lit.atom, n.lit.negated, env);
      case Kind::Next:
        return next(rec(n.kids[0], env));
      case Kind::Until: {
        TagSet inner = env;
        inner.insert(std::lower_bound(inner.begin(), inner.end(), cur), cur);
        inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
        return until(rec(n.kids[0], env), rec(n.kids[1], inner));
      }
      case Kind::Release:
        return release(rec(n.kids[0], env), rec(n.kids[1], env));
      case Kind::And: {
        std::vector<NodeId> ks;
        ks.reserve(n.kids.size());
        for (NodeId k : n.kids) ks.push_back(rec(k, env));
        return land(std::move(ks));
      }
      case Kind::Or: {
        std::vector<NodeId> ks;
        ks.reserve(n.kids.size());
        for (NodeId k : n.kids) ks.push_back(rec(k, env));
        return lor(std::move(ks));
      }
    }
    return cur;
  };
  return rec(id, {});
}

NodeId Arena::erase_tags(NodeId id) {
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> rec = [&](NodeId cur) -> NodeId {
    auto it = memo.find(cur);
    if (it != memo.end()) return it->second;
    const Node n = nodes_[cur];
    NodeId res = cur;
    switch (n.kind) {
      case Kind::True:
      case Kind::False:
        break;
      case Kind::Lit:
        res = lit(n.lit.atom, n.lit.negated);
        break;
      case Kind::Next:
        res = next(rec(n.kids[0]));
        break;
      case Kind::Until:
        res = until(rec(n.kids[0]), rec(n.kids[1]));
        break;
      case Kind::Release:
        res = release(rec(n.kids[0]), rec(n.kids[1]));
        break;
      case Kind::And: {
        std::vector<NodeId> ks;
        for (NodeId k : n.kids) ks.push_back(rec(k));
        res = land(std::move(ks));
        break;
      }
      case Kind::Or: {
        std::vector<NodeId> ks;
        for (NodeId k : n.kids) ks.push_back(rec(k));
        res = lor(std::move(ks));
        break;
      }
    }
    memo.emplace(cur, res);
    return res;
  };
  return rec(id);
}

// Printer precedence levels, loosest to tightest:
//   0 <->   1 ->   2 |   3 &   4 unary (! X F G)   5 U R   6 primary
// A child is parenthesized when its own level is below what its position
// requires. Left operands of U/R require a primary, right operands accept
// unary expressions (prefix operators are unambiguous on the right).
namespace {
int print_level(const Node& n) {
  switch (n.kind) {
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Next: return 4;
    case Kind::Until:
    case Kind::Release:
      return 5;
    case Kind::Lit:
      // "!a" reads as a unary expression, not a primary.
      return n.lit.negated ? 4 : 6;
    default: return 6;
  }
}
}  // namespace

void Arena::print_rec(NodeId id, int min_level, bool with_tags,
                      std::string& out) const {
  const Node& n = nodes_[id];
  bool sugar_f = n.kind == Kind::Until && n.kids[0] == kTrue;
  bool sugar_g = n.kind == Kind::Release && n.kids[0] == kFalse;
  int level = (sugar_f || sugar_g) ? 4 : print_level(n);
  bool parens = level < min_level;
  if (parens) out += '(';
  switch (n.kind) {
    case Kind::True:
      out += "true";
      break;
    case Kind::False:
      out += "false";
      break;
    case Kind::Lit:
      if (n.lit.negated) out += '!';
      out += atom_names_[n.lit.atom];
      if (with_tags && !n.lit.tags.empty()) {
        for (NodeId t : n.lit.tags) {
          out += '#';
          out += std::to_string(t);
        }
      }
      break;
    case Kind::Next:
      out += "X ";
      print_rec(n.kids[0], 4, with_tags, out);
      break;
    case Kind::Until:
    case Kind::Release:
      if (sugar_f || sugar_g) {
        out += sugar_f ? "F " : "G ";
        print_rec(n.kids[1], 4, with_tags, out);
      } else {
        print_rec(n.kids[0], 6, with_tags, out);
        out += n.kind == Kind::Until ? " U " : " R ";
        print_rec(n.kids[1], 4, with_tags, out);
      }
      break;
    case Kind::And:
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += " & ";
        print_rec(n.kids[i], 4, with_tags, out);
      }
      break;
    case Kind::Or:
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += " | ";
        print_rec(n.kids[i], 3, with_tags, out);
      }
      break;
  }
  if (parens) out += ')';
}

std::string Arena::print(NodeId id) const {
  std::string out;
  print_rec(id, 0, false, out);
  return out;
}

std::string Arena::print_tagged(NodeId id) const {
  std::string out;
  print_rec(id, 0, true, out);
  return out;
}

}  // namespace oblisat
