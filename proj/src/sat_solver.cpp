#include "oblisat/sat_solver.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <unistd.h>

namespace oblisat {

namespace {

// Constant folding before CNF conversion. The canonical BExpr keeps
// true/false leaves; the solver does not need them.
BPtr fold(const BPtr& a) {
  switch (a->k) {
    case BExpr::K::And: {
      std::vector<BPtr> kids;
      for (const auto& c : a->kids) {
        BPtr f = fold(c);
        if (f->k == BExpr::K::False) return bfalse();
        if (f->k == BExpr::K::True) continue;
        kids.push_back(std::move(f));
      }
      return band(std::move(kids));
    }
    case BExpr::K::Or: {
      std::vector<BPtr> kids;
      for (const auto& c : a->kids) {
        BPtr f = fold(c);
        if (f->k == BExpr::K::True) return btrue();
        if (f->k == BExpr::K::False) continue;
        kids.push_back(std::move(f));
      }
      return bor(std::move(kids));
    }
    default:
      return a;
  }
}

BPtr erase_lit_tags(const BPtr& a) {
  switch (a->k) {
    case BExpr::K::Lit:
      return a->lit.tags.empty() ? a : blit(erased(a->lit));
    case BExpr::K::And:
    case BExpr::K::Or: {
      std::vector<BPtr> kids;
      kids.reserve(a->kids.size());
      for (const auto& c : a->kids) kids.push_back(erase_lit_tags(c));
      return a->k == BExpr::K::And ? band(std::move(kids))
                                   : bor(std::move(kids));
    }
    default:
      return a;
  }
}

struct CnfBuilder {
  std::vector<std::vector<int>> clauses;
  std::map<AtomId, int> atom_var;
  int next_var = 0;

  int lit_code(const Lit& l) const {
    int v = atom_var.at(l.atom);
    return l.negated ? -v : v;
  }

  // Returns a literal equivalent to the subtree, introducing a selector
  // variable for compound nodes (full Tseitin, both directions).
  int encode(const BPtr& a) {
    if (a->k == BExpr::K::Lit) return lit_code(a->lit);
    int s = ++next_var;
    std::vector<int> long_clause;
    long_clause.reserve(a->kids.size() + 1);
    if (a->k == BExpr::K::And) {
      // s -> ci, (c1 & ... & cn) -> s
      long_clause.push_back(s);
      for (const auto& c : a->kids) {
        int ci = encode(c);
        clauses.push_back({-s, ci});
        long_clause.push_back(-ci);
      }
    } else {
      // ci -> s, s -> (c1 | ... | cn)
      long_clause.push_back(-s);
      for (const auto& c : a->kids) {
        int ci = encode(c);
        clauses.push_back({s, -ci});
        long_clause.push_back(ci);
      }
    }
    clauses.push_back(std::move(long_clause));
    return s;
  }

  // Top-level conjuncts become clauses directly; only nested structure gets
  // selector variables.
  void assert_top(const BPtr& a) {
    if (a->k == BExpr::K::And) {
      for (const auto& c : a->kids) assert_top(c);
      return;
    }
    if (a->k == BExpr::K::Lit) {
      clauses.push_back({lit_code(a->lit)});
      return;
    }
    // a is an Or; flatten literal disjuncts into one clause.
    std::vector<int> clause;
    for (const auto& c : a->kids) {
      if (c->k == BExpr::K::Lit)
        clause.push_back(lit_code(c->lit));
      else
        clause.push_back(encode(c));
    }
    clauses.push_back(std::move(clause));
  }
};

}  // namespace

Cnf to_cnf(const BPtr& formula) {
  BPtr a = fold(erase_lit_tags(formula));
  Cnf out;
  if (a->k == BExpr::K::True) return out;
  if (a->k == BExpr::K::False) {
    out.clauses.clauses.push_back({});
    return out;
  }
  CnfBuilder b;
  for (AtomId atom : bexpr_atoms(a)) {
    b.atom_var[atom] = ++b.next_var;
    out.var_atoms.push_back(atom);
  }
  b.assert_top(a);
  out.clauses.clauses = std::move(b.clauses);
  out.clauses.num_vars = b.next_var;
  return out;
}

// ---------------------------------------------------------------------------
// DPLL with two watched literals, chronological backtracking, lowest-index
// branching (true first).

namespace {

struct Dpll {
  int num_vars;
  std::vector<std::vector<int>> clauses;
  // watches[code(lit)] lists clause indices watching lit.
  std::vector<std::vector<int>> watches;
  std::vector<signed char> value;  // 1-based: 0 unassigned, +1, -1
  std::vector<int> trail;
  std::vector<int> level_start;

  explicit Dpll(const ClauseList& in) : num_vars(in.num_vars) {
    value.assign(num_vars + 1, 0);
    watches.assign(2 * (static_cast<std::size_t>(num_vars) + 1), {});
    clauses.reserve(in.clauses.size());
    for (const auto& c : in.clauses) clauses.push_back(c);
  }

  static int code(int lit) { return lit > 0 ? 2 * lit : 2 * (-lit) + 1; }

  signed char val(int lit) const {
    signed char v = value[std::abs(lit)];
    return lit > 0 ? v : static_cast<signed char>(-v);
  }

  bool assign(int lit) {
    int var = std::abs(lit);
    if (value[var] != 0) return val(lit) > 0;
    value[var] = lit > 0 ? 1 : -1;
    trail.push_back(lit);
    return true;
  }

  // Propagation queue over the trail; returns false on conflict.
  bool propagate(std::size_t& qhead) {
    while (qhead < trail.size()) {
      int lit = trail[qhead++];
      int falsified = -lit;
      auto& watch_list = watches[code(falsified)];
      std::size_t keep = 0;
      bool conflict = false;
      for (std::size_t i = 0; i < watch_list.size(); ++i) {
        int ci = watch_list[i];
        auto& c = clauses[ci];
        // Keep falsified watch at position 1.
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (val(c[0]) > 0) {
          watch_list[keep++] = ci;
          continue;
        }
        int found = 0;
        for (std::size_t j = 2; j < c.size(); ++j) {
          if (val(c[j]) >= 0) {
            found = static_cast<int>(j);
            break;
          }
        }
        if (found) {
          std::swap(c[1], c[found]);
          watches[code(c[1])].push_back(ci);
          continue;  // watch moved
        }
        watch_list[keep++] = ci;
        if (val(c[0]) < 0) {
          conflict = true;
          for (std::size_t j = i + 1; j < watch_list.size(); ++j)
            watch_list[keep++] = watch_list[j];
          break;
        }
        if (!assign(c[0])) {
          conflict = true;
          for (std::size_t j = i + 1; j < watch_list.size(); ++j)
            watch_list[keep++] = watch_list[j];
          break;
        }
      }
      watch_list.resize(keep);
      if (conflict) return false;
    }
    return true;
  }

  CnfResult run(RunContext* ctx) {
    // Unit and empty clauses are handled before watching.
    std::size_t qhead = 0;
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
      auto& c = clauses[ci];
      std::sort(c.begin(), c.end(), [](int a, int b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
      });
      c.erase(std::unique(c.begin(), c.end()), c.end());
      bool taut = false;
      for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i - 1] == -c[i]) taut = true;
      if (taut) continue;  // satisfied in every assignment, skip watching
      if (c.empty()) return {false, {}};
      if (c.size() == 1) {
        if (!assign(c[0])) return {false, {}};
        continue;
      }
      watches[code(c[0])].push_back(static_cast<int>(ci));
      watches[code(c[1])].push_back(static_cast<int>(ci));
    }
    if (!propagate(qhead)) return {false, {}};

    // decisions[i]: (trail position, literal, tried_other_polarity)
    struct Decision {
      std::size_t trail_pos;
      int lit;
      bool flipped;
    };
    std::vector<Decision> decisions;
    std::uint64_t steps = 0;
    for (;;) {
      if (ctx && (++steps & 0x3ff) == 0) ctx->checkpoint();
      int branch = 0;
      for (int v = 1; v <= num_vars; ++v) {
        if (value[v] == 0) {
          branch = v;
          break;
        }
      }
      if (!branch) {
        CnfResult res;
        res.sat = true;
        res.values.assign(num_vars + 1, false);
        for (int v = 1; v <= num_vars; ++v) res.values[v] = value[v] > 0;
        return res;
      }
      decisions.push_back({trail.size(), branch, false});
      assign(branch);
      std::size_t q = trail.size() - 1;
      while (!propagate(q)) {
        // Backtrack to the most recent decision with an untried polarity.
        while (!decisions.empty() && decisions.back().flipped) {
          auto& d = decisions.back();
          while (trail.size() > d.trail_pos) {
            value[std::abs(trail.back())] = 0;
            trail.pop_back();
          }
          decisions.pop_back();
        }
        if (decisions.empty()) return {false, {}};
        auto& d = decisions.back();
        while (trail.size() > d.trail_pos) {
          value[std::abs(trail.back())] = 0;
          trail.pop_back();
        }
        d.flipped = true;
        assign(-d.lit);
        q = trail.size() - 1;
      }
    }
  }
};

}  // namespace

CnfResult solve_cnf(const ClauseList& clauses, RunContext* ctx) {
  if (ctx) ctx->sat_calls.fetch_add(1, std::memory_order_relaxed);
  for (const auto& c : clauses.clauses)
    if (c.empty()) return {false, {}};
  Dpll d(clauses);
  return d.run(ctx);
}

namespace {

SatResult finish_model(const BPtr& original, const Cnf& cnf,
                       const CnfResult& r) {
  if (!r.sat) return {false, {}};
  SatResult out;
  out.sat = true;
  for (std::size_t i = 0; i < cnf.var_atoms.size(); ++i)
    out.model[cnf.var_atoms[i]] = r.values[i + 1];
  // Atoms folded away still belong to the model's domain.
  for (AtomId a : bexpr_atoms(original))
    out.model.try_emplace(a, false);
  return out;
}

}  // namespace

SatResult solve(const BPtr& a, RunContext* ctx) {
  Cnf cnf = to_cnf(a);
  CnfResult r = solve_cnf(cnf.clauses, ctx);
  return finish_model(a, cnf, r);
}

std::string write_dimacs(const ClauseList& clauses) {
  std::string out = "p cnf " + std::to_string(clauses.num_vars) + " " +
                    std::to_string(clauses.clauses.size()) + "\n";
  for (const auto& c : clauses.clauses) {
    for (int lit : c) {
      out += std::to_string(lit);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

ClauseList read_dimacs(std::string_view text) {
  ClauseList out;
  std::istringstream in{std::string(text)};
  std::string tok;
  bool header = false;
  std::vector<int> clause;
  while (in >> tok) {
    if (tok == "c") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      int nv = 0, nc = 0;
      if (!(in >> fmt >> nv >> nc) || fmt != "cnf")
        throw std::runtime_error("malformed DIMACS header");
      out.num_vars = nv;
      header = true;
      continue;
    }
    int lit = std::stoi(tok);
    if (lit == 0) {
      out.clauses.push_back(clause);
      clause.clear();
    } else {
      clause.push_back(lit);
      out.num_vars = std::max(out.num_vars, std::abs(lit));
    }
  }
  if (!clause.empty()) out.clauses.push_back(clause);
  if (!header && out.clauses.empty())
    throw std::runtime_error("empty DIMACS input");
  return out;
}

CnfResult read_dimacs_result(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string first;
  if (!(in >> first)) throw std::runtime_error("empty solver result");
  if (first == "UNSAT" || first == "UNSATISFIABLE" || first == "s" || first == "SAT" ||
      first == "SATISFIABLE") {
    // handled below
  } else {
    throw std::runtime_error("malformed solver result: '" + first + "'");
  }
  if (first == "s") {
    if (!(in >> first)) throw std::runtime_error("malformed solver result");
  }
  if (first == "UNSAT" || first == "UNSATISFIABLE") return {false, {}};
  CnfResult out;
  out.sat = true;
  int lit;
  int max_var = 0;
  std::vector<int> lits;
  std::string tok;
  while (in >> tok) {
    if (tok == "v") continue;
    lit = std::stoi(tok);
    if (lit == 0) break;
    lits.push_back(lit);
    max_var = std::max(max_var, std::abs(lit));
  }
  out.values.assign(max_var + 1, false);
  for (int l : lits) out.values[std::abs(l)] = l > 0;
  return out;
}

CnfResult solve_with_command(const ClauseList& clauses,
                             const std::string& cmd) {
  char path[] = "/tmp/oblisat-XXXXXX.cnf";
  int fd = mkstemps(path, 4);
  if (fd < 0) throw std::runtime_error("cannot create temp CNF file");
  std::string dimacs = write_dimacs(clauses);
  ssize_t written = write(fd, dimacs.data(), dimacs.size());
  close(fd);
  if (written != static_cast<ssize_t>(dimacs.size())) {
    unlink(path);
    throw std::runtime_error("cannot write temp CNF file");
  }
  std::string full = cmd + " " + path;
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) {
    unlink(path);
    throw std::runtime_error("cannot run external solver: " + cmd);
  }
  std::string output;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  pclose(pipe);
  unlink(path);
  return read_dimacs_result(output);
}

SatResult solve_external(const BPtr& a, const std::string& cmd,
                         RunContext* ctx) {
  if (ctx) ctx->sat_calls.fetch_add(1, std::memory_order_relaxed);
  Cnf cnf = to_cnf(a);
  for (const auto& c : cnf.clauses.clauses)
    if (c.empty()) return {false, {}};
  CnfResult r = solve_with_command(cnf.clauses, cmd);
  if (r.sat) r.values.resize(cnf.clauses.num_vars + 1, false);
  return finish_model(a, cnf, r);
}

}  // namespace oblisat
