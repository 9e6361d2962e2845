#include "oblisat/positional.hpp"

#include <algorithm>

#include "oblisat/sat_solver.hpp"

namespace oblisat {

bool poslit_less(const PosLit& a, const PosLit& b) {
  if (!(a.prop == b.prop)) return lit_less(a.prop, b.prop);
  if (a.start != b.start) {
    if (!a.start.has_value() || !b.start.has_value())
      return a.start.has_value();  // concrete starts before undetermined
    return *a.start < *b.start;
  }
  return static_cast<int>(a.duration) < static_cast<int>(b.duration);
}

namespace {

PPtr make(PosExpr::K k, PosLit leaf = {}, std::vector<PPtr> kids = {}) {
  auto e = std::make_shared<PosExpr>();
  e->k = k;
  e->leaf = std::move(leaf);
  e->kids = std::move(kids);
  return e;
}

const PPtr kTrue = make(PosExpr::K::True);
const PPtr kFalse = make(PosExpr::K::False);

bool pos_less(const PPtr& a, const PPtr& b);

bool pos_equal(const PPtr& a, const PPtr& b) {
  return !pos_less(a, b) && !pos_less(b, a);
}

bool pos_less(const PPtr& a, const PPtr& b) {
  if (a == b) return false;
  if (a->k != b->k) return static_cast<int>(a->k) < static_cast<int>(b->k);
  if (a->k == PosExpr::K::Leaf) return poslit_less(a->leaf, b->leaf);
  std::size_t n = std::min(a->kids.size(), b->kids.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (pos_less(a->kids[i], b->kids[i])) return true;
    if (pos_less(b->kids[i], a->kids[i])) return false;
  }
  return a->kids.size() < b->kids.size();
}

PPtr nary(PosExpr::K k, std::vector<PPtr> kids) {
  std::vector<PPtr> flat;
  flat.reserve(kids.size());
  for (auto& c : kids) {
    if (c->k == k) {
      for (const auto& cc : c->kids) flat.push_back(cc);
    } else {
      flat.push_back(std::move(c));
    }
  }
  std::sort(flat.begin(), flat.end(), pos_less);
  flat.erase(std::unique(flat.begin(), flat.end(), pos_equal), flat.end());
  if (flat.empty()) return k == PosExpr::K::And ? kTrue : kFalse;
  if (flat.size() == 1) return flat[0];
  return make(k, {}, std::move(flat));
}

}  // namespace

PPtr ptrue() { return kTrue; }
PPtr pfalse() { return kFalse; }
PPtr pleaf(PosLit l) { return make(PosExpr::K::Leaf, std::move(l)); }
PPtr pand(std::vector<PPtr> kids) { return nary(PosExpr::K::And, std::move(kids)); }
PPtr por(std::vector<PPtr> kids) { return nary(PosExpr::K::Or, std::move(kids)); }

PosLit pos_apply(PosLit l, TempOp op) {
  bool concrete = l.start.has_value();
  switch (op) {
    case TempOp::X:
      if (concrete) l.start = *l.start + 1;
      return l;
    case TempOp::U:
      l.start.reset();
      return l;
    case TempOp::R:
      return l;
    case TempOp::G:
      // geq and inf are already durations; only cur picks one up.
      if (l.duration == Duration::Cur)
        l.duration = concrete ? Duration::Geq : Duration::Inf;
      return l;
  }
  return l;
}

namespace {

void collect_leaves(const PPtr& t, std::vector<PosLit>& out) {
  switch (t->k) {
    case PosExpr::K::Leaf:
      out.push_back(t->leaf);
      break;
    case PosExpr::K::And:
    case PosExpr::K::Or:
      for (const auto& c : t->kids) collect_leaves(c, out);
      break;
    default:
      break;
  }
}

PPtr map_leaves(const PPtr& t, auto&& f) {
  switch (t->k) {
    case PosExpr::K::Leaf:
      return pleaf(f(t->leaf));
    case PosExpr::K::And: {
      std::vector<PPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& c : t->kids) kids.push_back(map_leaves(c, f));
      return pand(std::move(kids));
    }
    case PosExpr::K::Or: {
      std::vector<PPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& c : t->kids) kids.push_back(map_leaves(c, f));
      return por(std::move(kids));
    }
    default:
      return t;
  }
}

PPtr apply_op(const PPtr& t, TempOp op) {
  return map_leaves(t, [op](PosLit l) { return pos_apply(std::move(l), op); });
}

PPtr weaken(const PPtr& t) {
  return map_leaves(t, [](PosLit l) {
    l.start.reset();
    l.duration = Duration::Cur;
    return l;
  });
}

// Projections replace leaves by constants wholesale; folding them away keeps
// the projected formulas in the shape the refutation examples use.
BPtr band_fold(std::vector<BPtr> kids) {
  std::vector<BPtr> out;
  for (auto& k : kids) {
    if (k->k == BExpr::K::False) return bfalse();
    if (k->k == BExpr::K::True) continue;
    out.push_back(std::move(k));
  }
  return band(std::move(out));
}

BPtr bor_fold(std::vector<BPtr> kids) {
  std::vector<BPtr> out;
  for (auto& k : kids) {
    if (k->k == BExpr::K::True) return btrue();
    if (k->k == BExpr::K::False) continue;
    out.push_back(std::move(k));
  }
  return bor(std::move(out));
}

}  // namespace

std::vector<PosLit> pos_leaves(const PPtr& t) {
  std::vector<PosLit> out;
  collect_leaves(t, out);
  std::sort(out.begin(), out.end(), poslit_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PPtr ofp(const Arena& arena, NodeId id) {
  const Node& n = arena.node(id);
  switch (n.kind) {
    case Kind::True:
      return ptrue();
    case Kind::False:
      return pfalse();
    case Kind::Lit:
      return pleaf(PosLit{erased(n.lit), 0, Duration::Cur});
    case Kind::Next:
      return apply_op(ofp(arena, n.kids[0]), TempOp::X);
    case Kind::Until:
      return apply_op(ofp(arena, n.kids[1]), TempOp::U);
    case Kind::Release:
      // false R psi is G psi and gets the duration-introducing rules.
      return apply_op(ofp(arena, n.kids[1]),
                      n.kids[0] == Arena::kFalse ? TempOp::G : TempOp::R);
    case Kind::And: {
      std::vector<PPtr> kids;
      kids.reserve(n.kids.size());
      for (NodeId k : n.kids) kids.push_back(ofp(arena, k));
      return pand(std::move(kids));
    }
    case Kind::Or: {
      std::vector<PPtr> kids;
      kids.reserve(n.kids.size());
      for (NodeId k : n.kids) kids.push_back(ofp(arena, k));
      // Disjunction loses positional certainty unless every leaf of every
      // operand agrees on the start.
      std::vector<PosLit> all;
      for (const auto& k : kids) collect_leaves(k, all);
      bool uniform = true;
      for (std::size_t i = 1; i < all.size(); ++i)
        if (all[i].start != all[0].start) uniform = false;
      if (!uniform)
        for (auto& k : kids) k = weaken(k);
      return por(std::move(kids));
    }
  }
  return ptrue();
}

BPtr project_at(const PPtr& t, std::uint32_t i) {
  switch (t->k) {
    case PosExpr::K::True:
      return btrue();
    case PosExpr::K::False:
      return bfalse();
    case PosExpr::K::Leaf: {
      const PosLit& l = t->leaf;
      bool relevant =
          l.start.has_value() &&
          (*l.start == i || (*l.start < i && l.duration == Duration::Geq));
      return relevant ? blit(l.prop) : btrue();
    }
    case PosExpr::K::And: {
      std::vector<BPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& c : t->kids) kids.push_back(project_at(c, i));
      return band_fold(std::move(kids));
    }
    case PosExpr::K::Or: {
      std::vector<BPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& c : t->kids) kids.push_back(project_at(c, i));
      return bor_fold(std::move(kids));
    }
  }
  return btrue();
}

BPtr project_abstract(const PPtr& t, const std::vector<PosLit>& S) {
  switch (t->k) {
    case PosExpr::K::True:
      return btrue();
    case PosExpr::K::False:
      return bfalse();
    case PosExpr::K::Leaf: {
      bool in_s = std::find(S.begin(), S.end(), t->leaf) != S.end();
      return in_s ? blit(t->leaf.prop) : btrue();
    }
    case PosExpr::K::And: {
      std::vector<BPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& c : t->kids) kids.push_back(project_abstract(c, S));
      return band_fold(std::move(kids));
    }
    case PosExpr::K::Or: {
      std::vector<BPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& c : t->kids) kids.push_back(project_abstract(c, S));
      return bor_fold(std::move(kids));
    }
  }
  return btrue();
}

HeuristicResult unsat_heuristic(const Arena& arena, NodeId id,
                                RunContext* ctx, const ProjectionSat& sat) {
  PPtr t = ofp(arena, id);
  std::vector<PosLit> leaves = pos_leaves(t);

  std::vector<PosLit> S;
  for (const PosLit& l : leaves)
    if (l.duration == Duration::Geq) S.push_back(l);

  auto refuted = [&](const BPtr& p) {
    if (ctx) ctx->checkpoint();
    return sat ? !sat(p) : !solve(p, ctx).sat;
  };

  // Check order: the whole-duration projection first (one SAT call), then
  // per-position, then the inf- and undetermined-leaf extensions. Every
  // condition is independently sound, so order only affects which one is
  // reported.
  if (!S.empty()) {
    BPtr p = project_abstract(t, S);
    if (refuted(p)) return {true, 2, p, std::nullopt};
  }

  std::vector<std::uint32_t> starts;
  for (const PosLit& l : leaves)
    if (l.start.has_value()) starts.push_back(*l.start);
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  for (std::uint32_t i : starts) {
    BPtr p = project_at(t, i);
    if (refuted(p)) return {true, 1, p, i};
  }

  for (const PosLit& l : leaves) {
    if (l.duration != Duration::Inf) continue;
    std::vector<PosLit> ext = S;
    ext.push_back(l);
    BPtr p = project_abstract(t, ext);
    if (refuted(p)) return {true, 4, p, std::nullopt};
  }

  std::vector<PosLit> s_zero;
  for (const PosLit& l : S)
    if (l.start.has_value() && *l.start == 0) s_zero.push_back(l);
  for (const PosLit& l : leaves) {
    if (l.start.has_value()) continue;
    std::vector<PosLit> ext = s_zero;
    ext.push_back(l);
    BPtr p = project_abstract(t, ext);
    if (refuted(p)) return {true, 3, p, std::nullopt};
  }

  return {};
}

std::string poslit_to_string(const Arena& arena, const PosLit& l) {
  std::string out = "<";
  if (l.prop.negated) out += '!';
  out += arena.atom_name(l.prop.atom);
  out += ", ";
  out += l.start.has_value() ? std::to_string(*l.start) : std::string("_");
  out += ", ";
  switch (l.duration) {
    case Duration::Cur: out += "cur"; break;
    case Duration::Inf: out += "inf"; break;
    case Duration::Geq: out += ">="; break;
  }
  out += ">";
  return out;
}

}  // namespace oblisat
