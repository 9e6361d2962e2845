#include "oblisat/transition_system.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <unordered_set>

#include "oblisat/obligation.hpp"

namespace oblisat {

namespace {

bool entry_less(const Arena& a, const NormalFormEntry& x,
                const NormalFormEntry& y) {
  if (x.label != y.label)
    return std::lexicographical_compare(x.label.begin(), x.label.end(),
                                        y.label.begin(), y.label.end(),
                                        lit_less);
  return a.structurally_less(x.next, y.next);
}

/// Union of two labels, or nothing when an atom would occur with both
/// polarities (tags disregarded).
std::optional<LitSet> merge_label(const LitSet& a, const LitSet& b) {
  LitSet out = set_union(a, b);
  if (!consistent(out)) return std::nullopt;
  return out;
}

std::vector<NormalFormEntry> expand_rec(Arena& a, NodeId id, std::size_t cap);

std::vector<NormalFormEntry> product(Arena& a,
                                     std::vector<NormalFormEntry> acc,
                                     const std::vector<NormalFormEntry>& more,
                                     std::size_t cap) {
  if (acc.size() * more.size() > cap)
    throw ResourceLimitError(ResourceKind::ExpandCap,
                             "normal-form product exceeds cap");
  std::vector<NormalFormEntry> out;
  out.reserve(acc.size() * more.size());
  for (const auto& x : acc) {
    for (const auto& y : more) {
      auto label = merge_label(x.label, y.label);
      if (!label) continue;
      out.push_back({std::move(*label), a.land({x.next, y.next})});
    }
  }
  return out;
}

std::vector<NormalFormEntry> expand_rec(Arena& a, NodeId id, std::size_t cap) {
  const Node n = a.node(id);  // copy; recursion below may grow the arena
  switch (n.kind) {
    case Kind::True:
      return {{{}, a.tt()}};
    case Kind::False:
      return {};
    case Kind::Lit:
      return {{{n.lit}, a.tt()}};
    case Kind::Next: {
      std::vector<NormalFormEntry> out;
      for (NodeId d : a.disjuncts(n.kids[0])) out.push_back({{}, d});
      return out;
    }
    case Kind::Until: {
      // en(g) u en(f & X(f U g))
      std::vector<NormalFormEntry> out = expand_rec(a, n.kids[1], cap);
      NodeId step = a.land({n.kids[0], a.next(id)});
      auto rest = expand_rec(a, step, cap);
      out.insert(out.end(), rest.begin(), rest.end());
      return out;
    }
    case Kind::Release: {
      // en(f & g) u en(g & X(f R g))
      std::vector<NormalFormEntry> out =
          expand_rec(a, a.land({n.kids[0], n.kids[1]}), cap);
      NodeId step = a.land({n.kids[1], a.next(id)});
      auto rest = expand_rec(a, step, cap);
      out.insert(out.end(), rest.begin(), rest.end());
      return out;
    }
    case Kind::Or: {
      std::vector<NormalFormEntry> out;
      for (NodeId k : n.kids) {
        auto part = expand_rec(a, k, cap);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    case Kind::And: {
      std::vector<NormalFormEntry> out = expand_rec(a, n.kids[0], cap);
      for (std::size_t i = 1; i < n.kids.size(); ++i)
        out = product(a, std::move(out), expand_rec(a, n.kids[i], cap), cap);
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<NormalFormEntry> expand(Arena& arena, NodeId id, std::size_t cap) {
  std::vector<NormalFormEntry> out = expand_rec(arena, id, cap);
  std::sort(out.begin(), out.end(),
            [&](const NormalFormEntry& x, const NormalFormEntry& y) {
              return entry_less(arena, x, y);
            });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TransitionSystem::TransitionSystem(Arena& arena, NodeId init,
                                   ExpandLimits limits)
    : arena_(arena), limits_(limits) {
  intern_state(init);
}

StateId TransitionSystem::intern_state(NodeId f) {
  auto it = state_index_.find(f);
  if (it != state_index_.end()) return it->second;
  if (states_.size() >= limits_.state_cap)
    throw ResourceLimitError(ResourceKind::StateCap,
                             "transition system exceeds state cap");
  StateId s = static_cast<StateId>(states_.size());
  states_.push_back(f);
  state_index_.emplace(f, s);
  expanded_.push_back(false);
  out_edges_.emplace_back();
  return s;
}

std::span<const std::uint32_t> TransitionSystem::out(StateId s,
                                                     RunContext* ctx) {
  if (!expanded_[s]) {
    if (ctx) ctx->checkpoint();
    NodeId f = states_[s];
    auto it = expansion_cache_.find(f);
    if (it == expansion_cache_.end()) {
      it = expansion_cache_
               .emplace(f, expand(arena_, f, limits_.expand_cap))
               .first;
    }
    // The cache iterator stays valid: intern_state only touches state maps.
    for (const NormalFormEntry& e : it->second) {
      StateId to = intern_state(e.next);
      out_edges_[s].push_back(static_cast<std::uint32_t>(edges_.size()));
      edges_.push_back({s, to, e.label});
    }
    expanded_[s] = true;
    ++states_expanded_;
  }
  return out_edges_[s];
}

void TransitionSystem::explore_all(RunContext* ctx) {
  for (StateId s = 0; s < states_.size(); ++s) out(s, ctx);
}

std::string TransitionSystem::to_dot() const {
  std::string out = "digraph lts {\n  rankdir=LR;\n";
  for (StateId s = 0; s < states_.size(); ++s) {
    out += "  s" + std::to_string(s) + " [label=\"" +
           arena_.print_tagged(states_[s]) + "\"";
    if (s == 0) out += ", shape=doublecircle";
    out += "];\n";
  }
  for (const Edge& e : edges_) {
    std::string label;
    for (const Lit& l : e.label) {
      if (!label.empty()) label += ",";
      if (l.negated) label += "!";
      label += arena_.atom_name(l.atom);
      for (NodeId t : l.tags) label += "#" + std::to_string(t);
    }
    out += "  s" + std::to_string(e.from) + " -> s" + std::to_string(e.to) +
           " [label=\"" + label + "\"];\n";
  }
  out += "}\n";
  return out;
}

TransitionSystem explore(Arena& arena, NodeId init, ExpandLimits limits,
                         RunContext* ctx) {
  TransitionSystem ts(arena, init, limits);
  ts.explore_all(ctx);
  return ts;
}

namespace {

// Iterative Tarjan over the lazily expanded graph. Calls on_scc for every
// completed SCC (in completion order); a true return stops the walk.
void tarjan_walk(TransitionSystem& ts,
                 const std::function<bool(SccInfo&&)>& on_scc,
                 RunContext* ctx) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(ts.num_states(), kUnset);
  std::vector<std::uint32_t> lowlink(ts.num_states(), kUnset);
  std::vector<bool> on_stack(ts.num_states(), false);
  std::vector<StateId> stack;
  std::uint32_t next_index = 0;

  struct Frame {
    StateId v;
    std::size_t edge_cursor;
  };
  std::vector<Frame> frames;

  auto grow = [&](std::size_t n) {
    if (index.size() < n) {
      index.resize(n, kUnset);
      lowlink.resize(n, kUnset);
      on_stack.resize(n, false);
    }
  };

  auto push_state = [&](StateId v) {
    ts.out(v, ctx);  // expand before visiting
    grow(ts.num_states());
    index[v] = lowlink[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = true;
    frames.push_back({v, 0});
  };

  push_state(ts.initial());
  while (!frames.empty()) {
    Frame& f = frames.back();
    auto edges = ts.out(f.v, ctx);
    if (f.edge_cursor < edges.size()) {
      std::uint32_t eid = edges[f.edge_cursor++];
      StateId w = ts.edge(eid).to;
      ts.out(w, ctx);
      grow(ts.num_states());
      if (index[w] == kUnset) {
        push_state(w);
      } else if (on_stack[w]) {
        lowlink[f.v] = std::min(lowlink[f.v], index[w]);
      }
      continue;
    }
    // v is done; pop an SCC if v is a root.
    StateId v = f.v;
    frames.pop_back();
    if (!frames.empty())
      lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
    if (lowlink[v] != index[v]) continue;
    SccInfo scc;
    for (;;) {
      StateId w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      scc.states.push_back(w);
      if (w == v) break;
    }
    std::sort(scc.states.begin(), scc.states.end(),
              [&](StateId a, StateId b) { return index[a] < index[b]; });
    for (StateId w : scc.states) {
      for (std::uint32_t eid : ts.out(w, ctx)) {
        StateId to = ts.edge(eid).to;
        if (std::binary_search(scc.states.begin(), scc.states.end(), to,
                               [&](StateId a, StateId b) {
                                 return index[a] < index[b];
                               })) {
          scc.edge_ids.push_back(eid);
          for (const Lit& l : ts.edge(eid).label) scc.literals.push_back(l);
        }
      }
    }
    normalize(scc.literals);
    if (scc.edge_ids.empty()) continue;  // no cycle through this component
    if (on_scc(std::move(scc))) return;
  }
}

}  // namespace

std::vector<SccInfo> find_sccs(TransitionSystem& ts, RunContext* ctx) {
  std::vector<SccInfo> out;
  tarjan_walk(
      ts,
      [&](SccInfo&& scc) {
        out.push_back(std::move(scc));
        return false;
      },
      ctx);
  return out;
}

AcceptResult scc_accepts(const SccInfo& scc, TransitionSystem& ts) {
  for (StateId s : scc.states) {
    BPtr of = obligation_formula_tagged(ts.arena(), ts.state_formula(s));
    if (weak_sat(scc.literals, of)) return {true, s};
  }
  return {};
}

namespace {

/// Shortest path in the already-explored subgraph, by BFS over edge
/// insertion order. Never expands new states.
std::vector<std::uint32_t> bfs_path(TransitionSystem& ts, StateId from,
                                    StateId to,
                                    const std::vector<StateId>* within) {
  if (from == to) return {};
  auto allowed = [&](StateId s) {
    return !within || std::find(within->begin(), within->end(), s) !=
                          within->end();
  };
  std::unordered_map<StateId, std::uint32_t> via;
  std::deque<StateId> queue{from};
  std::vector<bool> seen(ts.num_states(), false);
  seen[from] = true;
  while (!queue.empty()) {
    StateId cur = queue.front();
    queue.pop_front();
    if (!ts.expanded(cur)) continue;
    for (std::uint32_t eid : ts.out(cur)) {
      const Edge& e = ts.edge(eid);
      if (!allowed(e.to) || seen[e.to]) continue;
      seen[e.to] = true;
      via[e.to] = eid;
      if (e.to == to) {
        std::vector<std::uint32_t> path;
        StateId back = to;
        while (back != from) {
          std::uint32_t pe = via[back];
          path.push_back(pe);
          back = ts.edge(pe).from;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(e.to);
    }
  }
  throw SoundnessError("no path to accepting state");
}

}  // namespace

Lasso extract_witness(TransitionSystem& ts, const SccInfo& scc, StateId state,
                      const std::vector<AtomId>& atoms) {
  Lasso w;
  for (std::uint32_t eid : bfs_path(ts, ts.initial(), state, nullptr))
    w.stem.push_back(complete_letter(ts.edge(eid).label, atoms));

  // Closed walk from `state` through every internal edge at least once:
  // greedily consume unused out-edges, bridging through the SCC when stuck,
  // then return to the start.
  std::vector<bool> used(ts.num_edges(), false);
  std::size_t remaining = scc.edge_ids.size();
  std::unordered_set<std::uint32_t> internal_set(scc.edge_ids.begin(),
                                                 scc.edge_ids.end());
  auto internal = [&](std::uint32_t eid) { return internal_set.contains(eid); };
  StateId cur = state;
  std::vector<std::uint32_t> walk;
  while (remaining > 0) {
    std::uint32_t pick = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t eid : ts.out(cur)) {
      if (internal(eid) && !used[eid]) {
        pick = eid;
        break;
      }
    }
    if (pick == std::numeric_limits<std::uint32_t>::max()) {
      // Bridge to the nearest member that still has unused out-edges.
      StateId target = state;
      std::size_t best = std::numeric_limits<std::size_t>::max();
      for (StateId s : scc.states) {
        bool has_unused = false;
        for (std::uint32_t eid : ts.out(s))
          if (internal(eid) && !used[eid]) has_unused = true;
        if (!has_unused) continue;
        std::size_t d = bfs_path(ts, cur, s, &scc.states).size();
        if (d < best) {
          best = d;
          target = s;
        }
      }
      for (std::uint32_t eid : bfs_path(ts, cur, target, &scc.states))
        walk.push_back(eid);
      cur = target;
      continue;
    }
    walk.push_back(pick);
    if (!used[pick]) {
      used[pick] = true;
      --remaining;
    }
    cur = ts.edge(pick).to;
  }
  for (std::uint32_t eid : bfs_path(ts, cur, state, &scc.states))
    walk.push_back(eid);

  for (std::uint32_t eid : walk)
    w.loop.push_back(complete_letter(ts.edge(eid).label, atoms));
  return w;
}

SearchOutcome search_accepting_scc(TransitionSystem& ts,
                                   const std::vector<AtomId>& witness_atoms,
                                   RunContext* ctx) {
  SearchOutcome out;
  tarjan_walk(
      ts,
      [&](SccInfo&& scc) {
        ++out.sccs_examined;
        AcceptResult acc = scc_accepts(scc, ts);
        if (!acc.accepted) return false;
        out.kind = SearchOutcome::Kind::Accepted;
        out.accepted_state = ts.state_formula(acc.state);
        out.witness = extract_witness(ts, scc, acc.state, witness_atoms);
        return true;
      },
      ctx);
  out.states = ts.num_states();
  return out;
}

}  // namespace oblisat
