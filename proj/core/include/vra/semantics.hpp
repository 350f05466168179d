#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "vra/model.hpp"

namespace vra {

/// ⟨state, stack⟩ with stack[0] the top of the stack word.
struct Configuration {
  StateId state = -1;
  std::vector<StateId> stack;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct RunStep {
  Configuration from;
  Symbol letter;
  Configuration to;
};

struct RecursiveRun {
  std::vector<RunStep> steps;
};

/// One-step successors of a configuration. Internal letters follow module
/// transitions with the stack untouched; call letters jump to an initial of
/// the called module pushing the procedural transition's target; return
/// letters pop when the current state is final for a matching module.
/// Letters outside the alphabet have no successors.
std::vector<Configuration> step(const Vra& v, const Configuration& c, Symbol letter);

enum class RejectReason { None, NotAccepted, NotWellMatched };

struct MembershipReport {
  bool accepted = false;
  RejectReason reason = RejectReason::None;
  std::optional<RecursiveRun> witness;
};

using StatePair = std::pair<StateId, StateId>;

/// Reusable membership engine; precomputes the transition tables once so a
/// stream of queries against the same VRA stays cheap.
class MembershipEvaluator {
 public:
  explicit MembershipEvaluator(const Vra& v);
  ~MembershipEvaluator();
  MembershipEvaluator(MembershipEvaluator&&) noexcept;
  MembershipEvaluator& operator=(MembershipEvaluator&&) noexcept;

  MembershipReport member(const Word& w, bool want_witness = false) const;
  /// {(q,p) : ⟨q,ε⟩ →w→ ⟨p,ε⟩}, grouped by owning module; w must be well
  /// matched.
  std::map<ModuleTag, std::vector<StatePair>> module_relation(const Word& w) const;
  /// Pairs restricted to the given module, with acceptance test helpers.
  bool accepts_from(const ModuleTag& tag, const Word& w) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Membership of a well-matched word per the recursive-run semantics.
/// Ill-matched words are rejected with RejectReason::NotWellMatched.
MembershipReport vra_member(const Vra& v, const Word& w, bool want_witness = false);

std::map<ModuleTag, std::vector<StatePair>> module_relation(const Vra& v, const Word& w);

}  // namespace vra
