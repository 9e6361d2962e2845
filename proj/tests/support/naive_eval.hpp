// Test-only reference semantics, independent of lasso_check: forward
// scanning with an explicit horizon instead of backward fixpoints. From any
// position of stem.loop^omega, all distinct suffixes appear within
// |stem| + |loop| steps, so a scan of that depth decides U and R exactly.

#pragma once

#include <map>
#include <string>

#include "oblisat/formula.hpp"
#include "oblisat/lasso.hpp"
#include "oblisat/parser.hpp"

namespace oblisat::testsupport {

inline const LitSet& letter_at(const Lasso& w, std::size_t p) {
  if (p < w.stem.size()) return w.stem[p];
  return w.loop[(p - w.stem.size()) % w.loop.size()];
}

inline bool naive_eval(const Arena& a, NodeId id, const Lasso& w,
                       std::size_t pos) {
  const std::size_t horizon = w.stem.size() + w.loop.size() + 1;
  const Node& n = a.node(id);
  switch (n.kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Lit:
      return letter_satisfies(letter_at(w, pos), n.lit);
    case Kind::And:
      for (NodeId k : n.kids)
        if (!naive_eval(a, k, w, pos)) return false;
      return true;
    case Kind::Or:
      for (NodeId k : n.kids)
        if (naive_eval(a, k, w, pos)) return true;
      return false;
    case Kind::Next:
      return naive_eval(a, n.kids[0], w, pos + 1);
    case Kind::Until:
      for (std::size_t i = 0; i <= horizon; ++i) {
        if (naive_eval(a, n.kids[1], w, pos + i)) return true;
        if (!naive_eval(a, n.kids[0], w, pos + i)) return false;
      }
      return false;
    case Kind::Release:
      for (std::size_t i = 0; i <= horizon; ++i) {
        if (!naive_eval(a, n.kids[1], w, pos + i)) return false;
        if (naive_eval(a, n.kids[0], w, pos + i)) return true;
      }
      return true;  // right side held on every distinct suffix
  }
  return false;
}

/// Same semantics over raw parse trees (negation over compounds, F/G/->/<->
/// still present). Atom names are resolved through the given map; unknown
/// names are false everywhere.
inline bool naive_eval_syntax(const std::map<std::string, AtomId>& atoms,
                              const Syntax& s, const Lasso& w,
                              std::size_t pos) {
  using Op = Syntax::Op;
  const std::size_t horizon = w.stem.size() + w.loop.size() + 1;
  switch (s.op) {
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Atom: {
      auto it = atoms.find(s.atom);
      if (it == atoms.end()) return false;
      return letter_satisfies(letter_at(w, pos), Lit{it->second, false, {}});
    }
    case Op::Not:
      return !naive_eval_syntax(atoms, *s.kids[0], w, pos);
    case Op::And:
      return naive_eval_syntax(atoms, *s.kids[0], w, pos) &&
             naive_eval_syntax(atoms, *s.kids[1], w, pos);
    case Op::Or:
      return naive_eval_syntax(atoms, *s.kids[0], w, pos) ||
             naive_eval_syntax(atoms, *s.kids[1], w, pos);
    case Op::Implies:
      return !naive_eval_syntax(atoms, *s.kids[0], w, pos) ||
             naive_eval_syntax(atoms, *s.kids[1], w, pos);
    case Op::Equiv:
      return naive_eval_syntax(atoms, *s.kids[0], w, pos) ==
             naive_eval_syntax(atoms, *s.kids[1], w, pos);
    case Op::Next:
      return naive_eval_syntax(atoms, *s.kids[0], w, pos + 1);
    case Op::Until:
      for (std::size_t i = 0; i <= horizon; ++i) {
        if (naive_eval_syntax(atoms, *s.kids[1], w, pos + i)) return true;
        if (!naive_eval_syntax(atoms, *s.kids[0], w, pos + i)) return false;
      }
      return false;
    case Op::Release:
      for (std::size_t i = 0; i <= horizon; ++i) {
        if (!naive_eval_syntax(atoms, *s.kids[1], w, pos + i)) return false;
        if (naive_eval_syntax(atoms, *s.kids[0], w, pos + i)) return true;
      }
      return true;
    case Op::Finally:
      for (std::size_t i = 0; i <= horizon; ++i)
        if (naive_eval_syntax(atoms, *s.kids[0], w, pos + i)) return true;
      return false;
    case Op::Globally:
      for (std::size_t i = 0; i <= horizon; ++i)
        if (!naive_eval_syntax(atoms, *s.kids[0], w, pos + i)) return false;
      return true;
  }
  return false;
}

}  // namespace oblisat::testsupport
