#pragma once

#include <map>
#include <string>
#include <vector>

#include "vra/model.hpp"

namespace vra {

struct VpaCallTransition {
  StateId src = -1;
  Symbol letter;
  StateId dst = -1;
  Symbol stack_sym;
  friend auto operator<=>(const VpaCallTransition&, const VpaCallTransition&) = default;
};

struct VpaReturnTransition {
  StateId src = -1;
  Symbol letter;
  Symbol stack_sym;
  StateId dst = -1;
  friend auto operator<=>(const VpaReturnTransition&, const VpaReturnTransition&) = default;
};

struct Vpa {
  PushdownAlphabet alphabet;
  std::vector<Symbol> stack_alphabet;  // sorted
  std::vector<StateId> states;
  std::vector<StateId> initials;
  std::vector<StateId> finals;
  std::vector<Transition> internal_transitions;
  std::vector<VpaCallTransition> call_transitions;
  std::vector<VpaReturnTransition> return_transitions;
  std::map<StateId, std::string> names;

  const std::string& name_of(StateId q) const;
  std::size_t transition_count() const {
    return internal_transitions.size() + call_transitions.size() +
           return_transitions.size();
  }
  std::size_t size() const { return states.size() + transition_count(); }
  void normalize();
};

std::vector<Diagnostic> validate_vpa(const Vpa& p);

/// Acceptance by an empty-stack-to-empty-stack stacked run; ill-matched words
/// are rejected.
bool vpa_member(const Vpa& p, const Word& w);

/// The state-stack translation: Γ = states, call transitions push the
/// procedural transition's target, returns pop it. Size O(|v|²).
Vpa vra_to_vpa(const Vra& v);

/// The quadruplet translation: one procedural symbol ⟨q,p,c,r⟩ per pair of a
/// call target and a return source, each module a relabeled copy of the VPA.
/// With trim_unreachable, modules never referenced from the start automaton
/// (transitively) are dropped. Untrimmed size O(|p|⁴).
Vra vpa_to_vra(const Vpa& p, bool trim_unreachable = false);

}  // namespace vra
