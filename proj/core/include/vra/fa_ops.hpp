#pragma once

#include <map>
#include <set>
#include <vector>

#include "vra/model.hpp"

namespace vra {

enum class SubsetScope {
  Reachable,  // only subsets reachable from {I}
  Full,       // all 2^Q subsets, as in the literal construction
};

/// Subset construction. The result is a complete DFA over `labels` whose
/// states are subsets of fa.states (the empty subset acts as the sink) with
/// initial state {I}.
FiniteAutomaton determinize_complete(const FiniteAutomaton& fa,
                                     const std::vector<Symbol>& labels,
                                     SubsetScope scope = SubsetScope::Reachable);

/// Replaces every transition q -J-> p whose label has an expansion by
/// q -X-> p for each X in expand[J]; labels listed in new_labels but not in
/// expand are kept as-is. Throws MissingExpansionError for labels in neither.
FiniteAutomaton relabel_to_supersets(const FiniteAutomaton& fa,
                                     const std::vector<Symbol>& new_labels,
                                     const std::map<Symbol, std::vector<Symbol>>& expand);

enum class FinalSelector { Finals, CoFinals };

enum class ProductScope { Reachable, Full };

/// Synchronous product of deterministic complete automata over a shared label
/// set. A product state is final iff every component satisfies its selector.
/// The empty family yields the one-state complete DFA accepting everything.
FiniteAutomaton product_select(const std::vector<FiniteAutomaton>& fas,
                               const std::vector<FinalSelector>& selectors,
                               const std::vector<Symbol>& labels,
                               ProductScope scope = ProductScope::Reachable);

/// ε-free NFA constructions; results carry freshly numbered states.
FiniteAutomaton fa_concat(const FiniteAutomaton& a, const FiniteAutomaton& b);
FiniteAutomaton fa_star(const FiniteAutomaton& a);
FiniteAutomaton fa_union(const FiniteAutomaton& a, const FiniteAutomaton& b);

/// Flips final status of a deterministic complete automaton.
FiniteAutomaton fa_complement_dfa(const FiniteAutomaton& a,
                                  const std::vector<Symbol>& labels);

/// NFA membership over the regular reading of the automaton.
bool fa_member(const FiniteAutomaton& fa, const std::vector<Symbol>& word);

/// Copy with states renumbered starting at `base`; names preserved.
FiniteAutomaton renumber(const FiniteAutomaton& fa, StateId base);

/// All distinct labels on transitions.
std::vector<Symbol> fa_labels_used(const FiniteAutomaton& fa);

}  // namespace vra
