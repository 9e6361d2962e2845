#include "oblisat/obligation.hpp"

#include <algorithm>

namespace oblisat {

bool obligation_less(const Obligation& a, const Obligation& b) {
  if (a.has_ff != b.has_ff) return !a.has_ff && b.has_ff;
  return std::lexicographical_compare(a.lits.begin(), a.lits.end(),
                                      b.lits.begin(), b.lits.end(), lit_less);
}

bool obligation_consistent(const Obligation& o) {
  return !o.has_ff && consistent(o.lits);
}

namespace {

void sort_unique(ObligationSet& s) {
  std::sort(s.begin(), s.end(), obligation_less);
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

Obligation merge(const Obligation& a, const Obligation& b) {
  return Obligation{a.has_ff || b.has_ff, set_union(a.lits, b.lits)};
}

ObligationSet product(const ObligationSet& a, const ObligationSet& b,
                      std::size_t cap) {
  if (a.size() * b.size() > cap)
    throw ResourceLimitError(ResourceKind::OlgCap,
                             "obligation set exceeds cap");
  ObligationSet out;
  out.reserve(a.size() * b.size());
  for (const auto& oa : a)
    for (const auto& ob : b) out.push_back(merge(oa, ob));
  sort_unique(out);
  if (out.size() > cap)
    throw ResourceLimitError(ResourceKind::OlgCap,
                             "obligation set exceeds cap");
  return out;
}

ObligationSet olg_rec(const Arena& a, NodeId id, std::size_t cap) {
  const Node& n = a.node(id);
  switch (n.kind) {
    case Kind::True:
      return {Obligation{}};
    case Kind::False:
      return {Obligation{true, {}}};
    case Kind::Lit:
      return {Obligation{false, {n.lit}}};
    case Kind::Next:
      return olg_rec(a, n.kids[0], cap);
    case Kind::Until:
    case Kind::Release:
      return olg_rec(a, n.kids[1], cap);
    case Kind::Or: {
      ObligationSet out;
      for (NodeId k : n.kids) {
        ObligationSet part = olg_rec(a, k, cap);
        out.insert(out.end(), part.begin(), part.end());
      }
      sort_unique(out);
      if (out.size() > cap)
        throw ResourceLimitError(ResourceKind::OlgCap,
                                 "obligation set exceeds cap");
      return out;
    }
    case Kind::And: {
      ObligationSet out = olg_rec(a, n.kids[0], cap);
      for (std::size_t i = 1; i < n.kids.size(); ++i)
        out = product(out, olg_rec(a, n.kids[i], cap), cap);
      return out;
    }
  }
  return {};
}

BPtr of_rec(const Arena& a, NodeId id, bool keep_tags) {
  const Node& n = a.node(id);
  switch (n.kind) {
    case Kind::True:
      return btrue();
    case Kind::False:
      return bfalse();
    case Kind::Lit:
      return blit(keep_tags ? n.lit : erased(n.lit));
    case Kind::Next:
      return of_rec(a, n.kids[0], keep_tags);
    case Kind::Until:
    case Kind::Release:
      return of_rec(a, n.kids[1], keep_tags);
    case Kind::And: {
      std::vector<BPtr> kids;
      kids.reserve(n.kids.size());
      for (NodeId k : n.kids) kids.push_back(of_rec(a, k, keep_tags));
      return band(std::move(kids));
    }
    case Kind::Or: {
      std::vector<BPtr> kids;
      kids.reserve(n.kids.size());
      for (NodeId k : n.kids) kids.push_back(of_rec(a, k, keep_tags));
      return bor(std::move(kids));
    }
  }
  return btrue();
}

}  // namespace

ObligationSet olg(const Arena& arena, NodeId id, std::size_t cap) {
  return olg_rec(arena, id, cap);
}

BPtr obligation_formula(const Arena& arena, NodeId id) {
  return of_rec(arena, id, false);
}

BPtr obligation_formula_tagged(const Arena& arena, NodeId id) {
  return of_rec(arena, id, true);
}

ObligationSet dnf(const BPtr& a, std::size_t cap) {
  switch (a->k) {
    case BExpr::K::True:
      return {Obligation{}};
    case BExpr::K::False:
      return {Obligation{true, {}}};
    case BExpr::K::Lit:
      return {Obligation{false, {a->lit}}};
    case BExpr::K::Or: {
      ObligationSet out;
      for (const auto& c : a->kids) {
        ObligationSet part = dnf(c, cap);
        out.insert(out.end(), part.begin(), part.end());
      }
      sort_unique(out);
      if (out.size() > cap)
        throw ResourceLimitError(ResourceKind::OlgCap, "DNF exceeds cap");
      return out;
    }
    case BExpr::K::And: {
      ObligationSet out = dnf(a->kids[0], cap);
      for (std::size_t i = 1; i < a->kids.size(); ++i)
        out = product(out, dnf(a->kids[i], cap), cap);
      return out;
    }
  }
  return {};
}

Obligation pick_obligation(const BPtr& a, const Assignment& model) {
  switch (a->k) {
    case BExpr::K::True:
      return {};
    case BExpr::K::False:
      throw SoundnessError("pick_obligation reached false");
    case BExpr::K::Lit:
      return Obligation{false, {erased(a->lit)}};
    case BExpr::K::And: {
      Obligation out;
      for (const auto& c : a->kids) out = merge(out, pick_obligation(c, model));
      return out;
    }
    case BExpr::K::Or:
      for (const auto& c : a->kids)
        if (eval_bool(model, c)) return pick_obligation(c, model);
      throw SoundnessError("pick_obligation: model does not satisfy formula");
  }
  return {};
}

}  // namespace oblisat
