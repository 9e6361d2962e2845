#include "oblisat/lasso.hpp"

#include <algorithm>

namespace oblisat {

bool Lasso::well_formed() const {
  if (loop.empty()) return false;
  auto ok = [](const LitSet& s) {
    return std::is_sorted(s.begin(), s.end(), lit_less) && consistent(s);
  };
  return std::all_of(stem.begin(), stem.end(), ok) &&
         std::all_of(loop.begin(), loop.end(), ok);
}

bool letter_satisfies(const LitSet& letter, const Lit& l) {
  // Positive membership decides; anything unmentioned is false.
  bool atom_true = false;
  for (const Lit& m : letter) {
    if (m.atom != l.atom) continue;
    if (!m.negated) atom_true = true;
  }
  return l.negated ? !atom_true : atom_true;
}

LitSet complete_letter(const LitSet& partial,
                       const std::vector<AtomId>& atoms) {
  LitSet out;
  out.reserve(atoms.size());
  for (const Lit& l : partial) out.push_back(erased(l));
  normalize(out);
  if (!consistent(out))
    throw SoundnessError("letter inconsistent after tag erasure");
  for (AtomId a : atoms) {
    bool mentioned = false;
    for (const Lit& l : out)
      if (l.atom == a) mentioned = true;
    if (!mentioned) out.push_back(Lit{a, true, {}});
  }
  normalize(out);
  return out;
}

bool lasso_check(const Arena& arena, NodeId id, const Lasso& w) {
  const std::size_t s = w.stem.size();
  const std::size_t l = w.loop.size();
  const std::size_t n = s + l;

  auto letter = [&](std::size_t p) -> const LitSet& {
    return p < s ? w.stem[p] : w.loop[p - s];
  };
  auto succ = [&](std::size_t p) { return p + 1 < n ? p + 1 : s; };

  std::vector<NodeId> order = arena.closure(id);
  // Children before parents.
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return arena.size(a) < arena.size(b);
  });

  std::unordered_map<NodeId, std::vector<char>> val;
  for (NodeId cur : order) {
    const Node& nd = arena.node(cur);
    std::vector<char> v(n, 0);
    switch (nd.kind) {
      case Kind::True:
        std::fill(v.begin(), v.end(), 1);
        break;
      case Kind::False:
        break;
      case Kind::Lit:
        for (std::size_t p = 0; p < n; ++p)
          v[p] = letter_satisfies(letter(p), nd.lit);
        break;
      case Kind::And: {
        std::fill(v.begin(), v.end(), 1);
        for (NodeId k : nd.kids) {
          const auto& kv = val.at(k);
          for (std::size_t p = 0; p < n; ++p) v[p] &= kv[p];
        }
        break;
      }
      case Kind::Or: {
        for (NodeId k : nd.kids) {
          const auto& kv = val.at(k);
          for (std::size_t p = 0; p < n; ++p) v[p] |= kv[p];
        }
        break;
      }
      case Kind::Next: {
        const auto& kv = val.at(nd.kids[0]);
        for (std::size_t p = 0; p < n; ++p) v[p] = kv[succ(p)];
        break;
      }
      case Kind::Until: {
        const auto& f = val.at(nd.kids[0]);
        const auto& g = val.at(nd.kids[1]);
        // Least fixpoint on the loop cycle: start from false, iterate
        // backwards around the cycle until stable.
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t k = 0; k < l; ++k) {
            std::size_t p = n - 1 - k;
            char nv = g[p] || (f[p] && v[succ(p)]);
            if (nv != v[p]) {
              v[p] = nv;
              changed = true;
            }
          }
        }
        for (std::size_t k = s; k-- > 0;)
          v[k] = g[k] || (f[k] && v[k + 1]);
        break;
      }
      case Kind::Release: {
        const auto& f = val.at(nd.kids[0]);
        const auto& g = val.at(nd.kids[1]);
        // Greatest fixpoint: start from true.
        for (std::size_t p = s; p < n; ++p) v[p] = 1;
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t k = 0; k < l; ++k) {
            std::size_t p = n - 1 - k;
            char nv = g[p] && (f[p] || v[succ(p)]);
            if (nv != v[p]) {
              v[p] = nv;
              changed = true;
            }
          }
        }
        for (std::size_t k = s; k-- > 0;)
          v[k] = g[k] && (f[k] || v[k + 1]);
        break;
      }
    }
    val.emplace(cur, std::move(v));
  }
  return val.at(id)[0] != 0;
}

std::string format_lasso(const Arena& arena, const Lasso& w) {
  auto fmt_letter = [&](const LitSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ',';
      if (s[i].negated) out += '!';
      out += arena.atom_name(s[i].atom);
    }
    out += '}';
    return out;
  };
  std::string out = "stem:";
  for (const auto& s : w.stem) {
    out += ' ';
    out += fmt_letter(s);
  }
  out += " ; loop:";
  for (const auto& s : w.loop) {
    out += ' ';
    out += fmt_letter(s);
  }
  return out;
}

}  // namespace oblisat
