// Shared primitive types: literals, literal sets, resource limits, and the
// cooperative cancellation context threaded through long-running phases.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oblisat {

using AtomId = std::uint32_t;
using NodeId = std::uint32_t;

/// Identifiers of the until-subformulas whose right operand encloses a
/// literal occurrence. Sorted, duplicate-free.
using TagSet = std::vector<NodeId>;

/// A possibly-tagged literal. Two literals are semantically equivalent when
/// atom and polarity agree; tags only refine syntactic identity.
struct Lit {
  AtomId atom = 0;
  bool negated = false;
  TagSet tags;

  friend bool operator==(const Lit&, const Lit&) = default;
};

inline bool lit_less(const Lit& a, const Lit& b) {
  if (a.atom != b.atom) return a.atom < b.atom;
  if (a.negated != b.negated) return !a.negated && b.negated;
  return a.tags < b.tags;
}

inline Lit erased(Lit l) {
  l.tags.clear();
  return l;
}

/// Same atom, opposite polarity. Tags are ignored: a tagged copy of an atom
/// still contradicts its negation.
inline bool complementary(const Lit& a, const Lit& b) {
  return a.atom == b.atom && a.negated != b.negated;
}

/// Sorted, duplicate-free set of literals.
using LitSet = std::vector<Lit>;

inline void normalize(LitSet& s) {
  std::sort(s.begin(), s.end(), lit_less);
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool contains(const LitSet& s, const Lit& l) {
  auto it = std::lower_bound(s.begin(), s.end(), l, lit_less);
  return it != s.end() && *it == l;
}

/// True when no atom occurs with both polarities (tags disregarded).
bool consistent(const LitSet& s);

/// Union of two normalized sets; empty result when the union is inconsistent
/// is *not* detected here — use merge_consistent for labels.
LitSet set_union(const LitSet& a, const LitSet& b);

enum class ResourceKind {
  OlgCap,     // obligation-set blowup guard
  ExpandCap,  // normal-form product blowup guard
  StateCap,   // transition-system state guard
  Timeout,
  Budget,    // oracle enumeration budget
  Cancelled,
};

const char* to_string(ResourceKind k);

class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(ResourceKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ResourceKind kind() const { return kind_; }

 private:
  ResourceKind kind_;
};

/// Raised when a verdict fails its own validation. Never caught internally.
class SoundnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Cancellation + deadline + counters shared by the strategies of one check.
struct RunContext {
  std::atomic<bool> cancel{false};
  std::chrono::steady_clock::time_point deadline{
      std::chrono::steady_clock::time_point::max()};
  std::atomic<std::uint64_t> sat_calls{0};

  bool stop_requested() const {
    if (cancel.load(std::memory_order_relaxed)) return true;
    return deadline != std::chrono::steady_clock::time_point::max() &&
           std::chrono::steady_clock::now() >= deadline;
  }

  /// Throws when cancelled or past the deadline.
  void checkpoint() const {
    if (cancel.load(std::memory_order_relaxed))
      throw ResourceLimitError(ResourceKind::Cancelled, "check cancelled");
    if (deadline != std::chrono::steady_clock::time_point::max() &&
        std::chrono::steady_clock::now() >= deadline)
      throw ResourceLimitError(ResourceKind::Timeout, "deadline exceeded");
  }
};

}  // namespace oblisat
