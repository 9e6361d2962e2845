#include "oblisat/decide.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "oblisat/obligation.hpp"
#include "oblisat/positional.hpp"
#include "oblisat/sat_solver.hpp"
#include "oblisat/transition_system.hpp"

namespace oblisat {

const char* to_string(Status s) {
  switch (s) {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::None: return "none";
    case Method::ObligationFastPath: return "of-fast-path";
    case Method::PositionalHeuristic: return "positional-heuristic";
    case Method::SccSearch: return "scc-search";
    case Method::ExhaustedSearch: return "exhausted-search";
  }
  return "?";
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Auto: return "auto";
    case Mode::OfOnly: return "of-only";
    case Mode::UnsatOnly: return "unsat-only";
    case Mode::FullOnly: return "full-only";
  }
  return "?";
}

std::optional<Mode> mode_from_string(std::string_view s) {
  if (s == "auto") return Mode::Auto;
  if (s == "of-only") return Mode::OfOnly;
  if (s == "unsat-only") return Mode::UnsatOnly;
  if (s == "full-only") return Mode::FullOnly;
  return std::nullopt;
}

const char* to_string(UnknownCause c) {
  switch (c) {
    case UnknownCause::Timeout: return "timeout";
    case UnknownCause::StateCap: return "state-cap";
    case UnknownCause::ExpandCap: return "expand-cap";
    case UnknownCause::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

UnknownCause cause_of(ResourceKind k) {
  switch (k) {
    case ResourceKind::StateCap: return UnknownCause::StateCap;
    case ResourceKind::ExpandCap: return UnknownCause::ExpandCap;
    case ResourceKind::Timeout: return UnknownCause::Timeout;
    default: return UnknownCause::Inconclusive;
  }
}

std::optional<std::string> external_cmd(const CheckConfig& cfg) {
  if (!cfg.external_sat) return std::nullopt;
  const char* cmd = std::getenv("OBLI_SAT_CMD");
  if (!cmd || !*cmd) return std::nullopt;
  return std::string(cmd);
}

/// One strategy's working material: its own arena plus the plain and tagged
/// canonical forms. Strategies never share mutable state; atom ids are
/// aligned with the reference arena so results compose.
struct Instance {
  Arena arena;
  NodeId plain;
  NodeId tagged;
  std::vector<AtomId> atoms;

  Instance(const Syntax& input, const Arena& reference) {
    arena.adopt_atoms(reference);
    plain = to_nnf(arena, input);
    tagged = arena.tag(plain);
    atoms = arena.atoms_of(plain);
  }
};

void validate_witness(Instance& inst, const CheckConfig& cfg,
                      const Lasso& w) {
  if (!cfg.validate_witness) return;
  if (!w.well_formed())
    throw SoundnessError("malformed witness: " + format_lasso(inst.arena, w));
  if (!lasso_check(inst.arena, inst.plain, w))
    throw SoundnessError("witness failed validation against the input: " +
                         format_lasso(inst.arena, w));
}

std::optional<Verdict> obligation_step(Instance& inst, const CheckConfig& cfg,
                                       RunContext& ctx, CheckStats& st) {
  auto t0 = Clock::now();
  BPtr of = obligation_formula(inst.arena, inst.tagged);
  auto cmd = external_cmd(cfg);
  SatResult r = cmd ? solve_external(of, *cmd, &ctx) : solve(of, &ctx);
  st.of_ms = ms_since(t0);
  if (!r.sat) return std::nullopt;
  Obligation o = pick_obligation(of, r.model);
  Lasso w;
  w.loop.push_back(complete_letter(o.lits, inst.atoms));
  validate_witness(inst, cfg, w);
  Verdict v;
  v.status = Status::Sat;
  v.method = Method::ObligationFastPath;
  v.witness = std::move(w);
  return v;
}

std::optional<Verdict> heuristic_step(Instance& inst, const CheckConfig& cfg,
                                      RunContext& ctx, CheckStats& st) {
  auto t0 = Clock::now();
  ProjectionSat sat;
  if (auto cmd = external_cmd(cfg)) {
    sat = [cmd = *cmd, &ctx](const BPtr& p) {
      return solve_external(p, cmd, &ctx).sat;
    };
  }
  HeuristicResult h = unsat_heuristic(inst.arena, inst.tagged, &ctx, sat);
  st.heuristic_ms = ms_since(t0);
  if (!h.proved_unsat) return std::nullopt;
  Verdict v;
  v.status = Status::Unsat;
  v.method = Method::PositionalHeuristic;
  v.heuristic = HeuristicEvidence{
      h.condition, bexpr_to_string(inst.arena, h.projection), h.position};
  return v;
}

/// Complete step: either a validated model or a proof of emptiness.
/// Returns nullopt only when cancelled; caps and timeouts surface as
/// Unknown verdicts.
std::optional<Verdict> search_step(Instance& inst, const CheckConfig& cfg,
                                   RunContext& ctx, CheckStats& st) {
  auto t0 = Clock::now();
  TransitionSystem ts(inst.arena, inst.tagged,
                      {cfg.expand_cap, cfg.state_cap});
  try {
    SearchOutcome o = search_accepting_scc(ts, inst.atoms, &ctx);
    st.search_ms = ms_since(t0);
    st.states_expanded = ts.states_expanded();
    st.sccs_examined = o.sccs_examined;
    Verdict v;
    if (o.kind == SearchOutcome::Kind::Accepted) {
      validate_witness(inst, cfg, *o.witness);
      v.status = Status::Sat;
      v.method = Method::SccSearch;
      v.witness = std::move(o.witness);
    } else {
      v.status = Status::Unsat;
      v.method = Method::ExhaustedSearch;
      v.search = SearchEvidence{o.states, o.sccs_examined};
    }
    return v;
  } catch (const ResourceLimitError& e) {
    st.search_ms = ms_since(t0);
    st.states_expanded = ts.states_expanded();
    if (e.kind() == ResourceKind::Cancelled) return std::nullopt;
    Verdict v;
    v.status = Status::Unknown;
    v.cause = cause_of(e.kind());
    return v;
  }
}

CheckRun run_auto(const Syntax& input, const CheckConfig& cfg,
                  RunContext& ctx, Clock::time_point t0,
                  const Arena& reference) {
  struct Shared {
    std::mutex m;
    std::condition_variable cv;
    std::optional<Verdict> verdict;
    std::optional<UnknownCause> fallback_cause;
    int finished = 0;
    std::exception_ptr error;
  } shared;

  CheckStats heur_stats, search_stats;

  auto submit = [&](std::optional<Verdict>&& v) {
    std::lock_guard<std::mutex> lk(shared.m);
    if (v && v->status != Status::Unknown) {
      if (!shared.verdict) {
        shared.verdict = std::move(*v);
        ctx.cancel.store(true, std::memory_order_relaxed);
      }
    } else if (v && v->cause) {
      if (!shared.fallback_cause || *v->cause == UnknownCause::Timeout)
        shared.fallback_cause = v->cause;
    }
    ++shared.finished;
    shared.cv.notify_all();
  };

  auto guard = [&](auto&& body) {
    try {
      submit(body());
    } catch (const ResourceLimitError&) {
      submit(std::nullopt);
    } catch (...) {
      {
        std::lock_guard<std::mutex> lk(shared.m);
        shared.error = std::current_exception();
        ++shared.finished;
        ctx.cancel.store(true, std::memory_order_relaxed);
      }
      shared.cv.notify_all();
    }
  };

  std::thread fast([&] {
    guard([&]() -> std::optional<Verdict> {
      Instance inst(input, reference);
      if (auto v = obligation_step(inst, cfg, ctx, heur_stats)) return v;
      return heuristic_step(inst, cfg, ctx, heur_stats);
    });
  });
  std::thread full([&] {
    guard([&]() -> std::optional<Verdict> {
      Instance inst(input, reference);
      return search_step(inst, cfg, ctx, search_stats);
    });
  });

  {
    std::unique_lock<std::mutex> lk(shared.m);
    shared.cv.wait(lk, [&] {
      return shared.verdict.has_value() || shared.error || shared.finished == 2;
    });
    if (shared.verdict || shared.error)
      ctx.cancel.store(true, std::memory_order_relaxed);
    shared.cv.wait(lk, [&] { return shared.finished == 2; });
  }
  fast.join();
  full.join();
  if (shared.error) std::rethrow_exception(shared.error);

  CheckRun run;
  if (shared.verdict) {
    run.verdict = std::move(*shared.verdict);
  } else {
    run.verdict.status = Status::Unknown;
    run.verdict.cause =
        shared.fallback_cause.value_or(ctx.stop_requested()
                                           ? UnknownCause::Timeout
                                           : UnknownCause::Inconclusive);
  }
  run.stats = search_stats;
  run.stats.of_ms = heur_stats.of_ms;
  run.stats.heuristic_ms = heur_stats.heuristic_ms;
  run.stats.sat_solver_calls = ctx.sat_calls.load();
  run.stats.total_ms = ms_since(t0);
  return run;
}

}  // namespace

CheckRun run_check(const Syntax& input, const CheckConfig& cfg) {
  auto t0 = Clock::now();
  RunContext ctx;
  if (cfg.timeout_seconds > 0) {
    ctx.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(
                                          cfg.timeout_seconds));
  }

  auto reference = std::make_shared<Arena>();
  NodeId ref_formula = to_nnf(*reference, input);

  if (cfg.mode == Mode::Auto) {
    CheckRun run = run_auto(input, cfg, ctx, t0, *reference);
    run.arena = std::move(reference);
    run.formula = ref_formula;
    return run;
  }

  CheckRun run;
  run.arena = reference;
  run.formula = ref_formula;
  Instance inst(input, *reference);
  std::optional<Verdict> v;
  try {
    switch (cfg.mode) {
      case Mode::OfOnly:
        v = obligation_step(inst, cfg, ctx, run.stats);
        break;
      case Mode::UnsatOnly:
        v = heuristic_step(inst, cfg, ctx, run.stats);
        break;
      case Mode::FullOnly:
        v = search_step(inst, cfg, ctx, run.stats);
        break;
      case Mode::Auto:
        break;
    }
  } catch (const ResourceLimitError& e) {
    run.verdict.status = Status::Unknown;
    run.verdict.cause = cause_of(e.kind());
    run.stats.sat_solver_calls = ctx.sat_calls.load();
    run.stats.total_ms = ms_since(t0);
    return run;
  }
  if (v) {
    run.verdict = std::move(*v);
  } else {
    run.verdict.status = Status::Unknown;
    run.verdict.cause = ctx.stop_requested() ? UnknownCause::Timeout
                                             : UnknownCause::Inconclusive;
  }
  run.stats.sat_solver_calls = ctx.sat_calls.load();
  run.stats.total_ms = ms_since(t0);
  return run;
}

CheckRun run_check(std::string_view text, const CheckConfig& cfg) {
  return run_check(*parse_syntax(text), cfg);
}

Verdict decide(std::string_view text, const CheckConfig& cfg) {
  return run_check(text, cfg).verdict;
}

// ---------------------------------------------------------------------------
// Brute-force oracle.

namespace {

bool loop_is_repetition(const std::uint16_t* loop, std::size_t len) {
  for (std::size_t p = 1; p <= len / 2; ++p) {
    if (len % p != 0) continue;
    bool rep = true;
    for (std::size_t i = p; i < len && rep; ++i)
      if (loop[i] != loop[i - p]) rep = false;
    if (rep) return true;
  }
  return false;
}

}  // namespace

namespace {

// Reusable evaluator over one formula's closure: per lasso, truth values are
// position bitmasks computed bottom-up, with the same loop fixpoints as
// lasso_check. Closure ids are ascending, so index order is child-first.
struct ClosureEval {
  const Arena& arena;
  std::vector<NodeId> order;                    // closure, ascending ids
  std::unordered_map<NodeId, std::uint32_t> pos;  // id -> index in order
  std::vector<std::uint32_t> mask;              // truth bits per node

  ClosureEval(const Arena& a, NodeId id) : arena(a) {
    order = a.closure(id);
    std::sort(order.begin(), order.end());
    for (std::uint32_t i = 0; i < order.size(); ++i) pos.emplace(order[i], i);
    mask.resize(order.size());
  }

  // lit_truth[i] = bitmask over valuations satisfying literal node order[i].
  std::vector<std::uint32_t> lit_truth;
  void bind_letters(const std::vector<LitSet>& letters) {
    lit_truth.assign(order.size(), 0);
    for (std::uint32_t i = 0; i < order.size(); ++i) {
      const Node& n = arena.node(order[i]);
      if (n.kind != Kind::Lit) continue;
      for (std::size_t v = 0; v < letters.size(); ++v)
        if (letter_satisfies(letters[v], n.lit)) lit_truth[i] |= 1u << v;
    }
  }

  // digits: letter index per position; s = stem length, n = total.
  bool holds(const std::uint16_t* digits, std::size_t s, std::size_t n) {
    const std::uint32_t all = n >= 32 ? ~0u : (1u << n) - 1;
    auto succ = [&](std::size_t p) { return p + 1 < n ? p + 1 : s; };
    for (std::uint32_t i = 0; i < order.size(); ++i) {
      const Node& nd = arena.node(order[i]);
      std::uint32_t m = 0;
      switch (nd.kind) {
        case Kind::True:
          m = all;
          break;
        case Kind::False:
          break;
        case Kind::Lit:
          for (std::size_t p = 0; p < n; ++p)
            if (lit_truth[i] & (1u << digits[p])) m |= 1u << p;
          break;
        case Kind::And: {
          m = all;
          for (NodeId k : nd.kids) m &= mask[pos.at(k)];
          break;
        }
        case Kind::Or: {
          for (NodeId k : nd.kids) m |= mask[pos.at(k)];
          break;
        }
        case Kind::Next: {
          std::uint32_t km = mask[pos.at(nd.kids[0])];
          for (std::size_t p = 0; p < n; ++p)
            if (km & (1u << succ(p))) m |= 1u << p;
          break;
        }
        case Kind::Until: {
          std::uint32_t f = mask[pos.at(nd.kids[0])];
          std::uint32_t g = mask[pos.at(nd.kids[1])];
          bool changed = true;
          while (changed) {
            changed = false;
            for (std::size_t q = n; q-- > s;) {
              std::uint32_t bit = 1u << q;
              bool nv = (g & bit) || ((f & bit) && (m & (1u << succ(q))));
              if (nv != bool(m & bit)) {
                m ^= bit;
                changed = true;
              }
            }
          }
          for (std::size_t q = s; q-- > 0;) {
            std::uint32_t bit = 1u << q;
            if ((g & bit) || ((f & bit) && (m & (1u << (q + 1))))) m |= bit;
          }
          break;
        }
        case Kind::Release: {
          std::uint32_t f = mask[pos.at(nd.kids[0])];
          std::uint32_t g = mask[pos.at(nd.kids[1])];
          for (std::size_t q = s; q < n; ++q) m |= 1u << q;
          bool changed = true;
          while (changed) {
            changed = false;
            for (std::size_t q = n; q-- > s;) {
              std::uint32_t bit = 1u << q;
              bool nv = (g & bit) && ((f & bit) || (m & (1u << succ(q))));
              if (nv != bool(m & bit)) {
                m ^= bit;
                changed = true;
              }
            }
          }
          for (std::size_t q = s; q-- > 0;) {
            std::uint32_t bit = 1u << q;
            if ((g & bit) && ((f & bit) || (m & (1u << (q + 1))))) m |= bit;
          }
          break;
        }
      }
      mask[i] = m;
    }
    return mask.back() & 1u;
  }
};

}  // namespace

OracleResult oracle_decide(const Arena& arena, NodeId id,
                           std::size_t len_bound, std::uint64_t budget) {
  std::vector<AtomId> atoms = arena.atoms_of(id);
  if (atoms.size() > 4)
    throw std::invalid_argument("oracle_decide supports at most 4 atoms");
  if (len_bound > 30) len_bound = 30;  // position bitmask width

  // All full valuations as letters.
  std::vector<LitSet> letters;
  for (std::size_t m = 0; m < (1u << atoms.size()); ++m) {
    LitSet s;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      s.push_back(Lit{atoms[i], (m & (1u << i)) == 0, {}});
    normalize(s);
    letters.push_back(std::move(s));
  }
  const std::size_t k = letters.size();

  ClosureEval eval(arena, id);
  eval.bind_letters(letters);

  std::uint64_t checked = 0;
  for (std::size_t n = 1; n <= len_bound; ++n) {
    std::vector<std::uint16_t> digits(n, 0);
    for (;;) {
      for (std::size_t s = 0; s + 1 <= n; ++s) {
        // digits[0..s) is the stem, digits[s..n) the loop. Skip lassos that
        // denote a word already enumerated at this or a smaller total:
        // loops that repeat a shorter loop, and stems whose last letter
        // equals the loop's last (a rotation of a shorter-stem form).
        if (loop_is_repetition(digits.data() + s, n - s)) continue;
        if (s > 0 && digits[s - 1] == digits[n - 1]) continue;
        if (++checked > budget)
          throw ResourceLimitError(ResourceKind::Budget,
                                   "oracle enumeration budget exceeded");
        if (eval.holds(digits.data(), s, n)) {
          Lasso w;
          for (std::size_t i = 0; i < s; ++i)
            w.stem.push_back(letters[digits[i]]);
          for (std::size_t i = s; i < n; ++i)
            w.loop.push_back(letters[digits[i]]);
          if (!lasso_check(arena, id, w))
            throw SoundnessError("oracle witness failed lasso_check");
          return {true, std::move(w), n};
        }
      }
      // odometer
      std::size_t pos = n;
      while (pos > 0 && digits[pos - 1] + 1u == k) digits[--pos] = 0;
      if (pos == 0) break;
      ++digits[pos - 1];
    }
  }
  return {false, std::nullopt, 0};
}

}  // namespace oblisat
