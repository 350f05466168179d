#pragma once

#include <map>
#include <optional>
#include <vector>

#include "vra/model.hpp"

namespace vra {

struct EmptinessCertificate {
  std::vector<StateId> reach;    // Reach_* at convergence
  std::vector<Symbol> enabled;   // 𝒥_*: modules with nonempty language
  std::optional<Word> witness;   // present iff the language is nonempty
};

struct EmptinessResult {
  bool empty = true;
  EmptinessCertificate certificate;
};

/// Worklist reachability: states are processed once over internal and
/// currently-enabled procedural labels; enabling a module replays its
/// transitions from the processed set. O(|δ| + |states|·|Σ_proc|).
EmptinessResult is_empty(const Vra& v);

/// Per-module nonemptiness from one reachability fixpoint, with on-demand
/// witness extraction. Used by the emptiness, codeterminism, and predicate
/// checks.
class ReachAnalysis {
 public:
  explicit ReachAnalysis(const Vra& v);

  const std::vector<StateId>& reach() const { return reach_; }
  const std::vector<Symbol>& enabled() const { return enabled_; }
  bool module_nonempty(const ModuleTag& tag) const;
  /// A word carried by some accepting run of the module; only valid when
  /// module_nonempty(tag).
  Word witness(const ModuleTag& tag) const;

 private:
  Word expand_state(StateId q) const;

  const Vra* v_;
  std::vector<StateId> reach_;      // sorted Done set
  std::vector<Symbol> enabled_;
  std::map<StateId, std::pair<StateId, Symbol>> pred_;  // first-discovery edge
  std::map<Symbol, StateId> enabling_final_;
  mutable std::map<int, Word> memo_;  // per enabled symbol id
};

struct DecisionReport {
  bool holds = false;
  std::optional<Word> counterexample;
};

/// L(v) = WM(Σ̂), decided as emptiness of the complement.
DecisionReport is_universal(const Vra& v);

/// L(a) ⊆ L(b), decided as emptiness of a ∩ ¬b.
DecisionReport includes(const Vra& a, const Vra& b);

/// Inclusion both ways.
DecisionReport equivalent(const Vra& a, const Vra& b);

}  // namespace vra
