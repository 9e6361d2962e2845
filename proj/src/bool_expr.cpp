#include "oblisat/bool_expr.hpp"

#include <algorithm>

namespace oblisat {

namespace {

BPtr make(BExpr::K k, Lit lit = {}, std::vector<BPtr> kids = {}) {
  auto e = std::make_shared<BExpr>();
  e->k = k;
  e->lit = std::move(lit);
  e->kids = std::move(kids);
  return e;
}

const BPtr kTrue = make(BExpr::K::True);
const BPtr kFalse = make(BExpr::K::False);

int rank(BExpr::K k) { return static_cast<int>(k); }

}  // namespace

BPtr btrue() { return kTrue; }
BPtr bfalse() { return kFalse; }
BPtr blit(Lit l) { return make(BExpr::K::Lit, std::move(l)); }

bool bexpr_less(const BPtr& a, const BPtr& b) {
  if (a == b) return false;
  if (a->k != b->k) return rank(a->k) < rank(b->k);
  if (a->k == BExpr::K::Lit) return lit_less(a->lit, b->lit);
  std::size_t n = std::min(a->kids.size(), b->kids.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (bexpr_less(a->kids[i], b->kids[i])) return true;
    if (bexpr_less(b->kids[i], a->kids[i])) return false;
  }
  return a->kids.size() < b->kids.size();
}

bool bexpr_equal(const BPtr& a, const BPtr& b) {
  if (a == b) return true;
  if (a->k != b->k) return false;
  if (a->k == BExpr::K::Lit) return a->lit == b->lit;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!bexpr_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

namespace {

BPtr nary(BExpr::K k, std::vector<BPtr> kids) {
  std::vector<BPtr> flat;
  flat.reserve(kids.size());
  for (auto& c : kids) {
    if (c->k == k) {
      for (const auto& cc : c->kids) flat.push_back(cc);
    } else {
      flat.push_back(std::move(c));
    }
  }
  std::sort(flat.begin(), flat.end(), bexpr_less);
  flat.erase(std::unique(flat.begin(), flat.end(),
                         [](const BPtr& a, const BPtr& b) {
                           return bexpr_equal(a, b);
                         }),
             flat.end());
  if (flat.empty()) return k == BExpr::K::And ? kTrue : kFalse;
  if (flat.size() == 1) return flat[0];
  return make(k, {}, std::move(flat));
}

}  // namespace

BPtr band(std::vector<BPtr> kids) { return nary(BExpr::K::And, std::move(kids)); }
BPtr bor(std::vector<BPtr> kids) { return nary(BExpr::K::Or, std::move(kids)); }

bool weak_sat(const LitSet& s, const BPtr& a) {
  switch (a->k) {
    case BExpr::K::True:
      return true;
    case BExpr::K::False:
      return false;
    case BExpr::K::Lit:
      return contains(s, a->lit);
    case BExpr::K::And:
      for (const auto& c : a->kids)
        if (!weak_sat(s, c)) return false;
      return true;
    case BExpr::K::Or:
      for (const auto& c : a->kids)
        if (weak_sat(s, c)) return true;
      return false;
  }
  return false;
}

bool eval_bool(const Assignment& assignment, const BPtr& a) {
  switch (a->k) {
    case BExpr::K::True:
      return true;
    case BExpr::K::False:
      return false;
    case BExpr::K::Lit: {
      auto it = assignment.find(a->lit.atom);
      bool v = it != assignment.end() && it->second;
      return a->lit.negated ? !v : v;
    }
    case BExpr::K::And:
      for (const auto& c : a->kids)
        if (!eval_bool(assignment, c)) return false;
      return true;
    case BExpr::K::Or:
      for (const auto& c : a->kids)
        if (eval_bool(assignment, c)) return true;
      return false;
  }
  return false;
}

namespace {
void collect_lits(const BPtr& a, LitSet& out) {
  switch (a->k) {
    case BExpr::K::Lit:
      out.push_back(a->lit);
      break;
    case BExpr::K::And:
    case BExpr::K::Or:
      for (const auto& c : a->kids) collect_lits(c, out);
      break;
    default:
      break;
  }
}
}  // namespace

LitSet bexpr_literals(const BPtr& a) {
  LitSet out;
  collect_lits(a, out);
  normalize(out);
  return out;
}

std::vector<AtomId> bexpr_atoms(const BPtr& a) {
  std::vector<AtomId> out;
  for (const Lit& l : bexpr_literals(a)) out.push_back(l.atom);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string bexpr_to_string(const Arena& arena, const BPtr& a) {
  switch (a->k) {
    case BExpr::K::True:
      return "true";
    case BExpr::K::False:
      return "false";
    case BExpr::K::Lit:
      return (a->lit.negated ? "!" : "") + arena.atom_name(a->lit.atom);
    case BExpr::K::And:
    case BExpr::K::Or: {
      std::string sep = a->k == BExpr::K::And ? " & " : " | ";
      std::string out;
      for (std::size_t i = 0; i < a->kids.size(); ++i) {
        if (i) out += sep;
        const auto& c = a->kids[i];
        bool parens = c->k == BExpr::K::And || c->k == BExpr::K::Or;
        if (parens) out += '(';
        out += bexpr_to_string(arena, c);
        if (parens) out += ')';
      }
      return out;
    }
  }
  return "?";
}

}  // namespace oblisat
