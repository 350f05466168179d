#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vra/model.hpp"

namespace vra {

/// One symbol of Σ'_proc: a subset of the source symbols linked to one
/// call/return pair. The empty subset of each pair is a distinct symbol.
struct ProcSubsetSymbol {
  Symbol call;
  Symbol ret;
  std::vector<Symbol> members;  // sorted subset of the source Σ_proc^⟨c,r⟩
  Symbol symbol;                // the synthesized procedural symbol

  friend bool operator==(const ProcSubsetSymbol&, const ProcSubsetSymbol&) = default;
};

struct DetReport {
  bool deterministic = false;
  std::vector<Diagnostic> diagnostics;
};

/// All module FAs (and the start) are DFAs and no state branches on two
/// procedural symbols sharing a call symbol.
DetReport is_deterministic(const Vra& v);

/// Deterministic and f_call injective on Σ_proc.
bool is_spa(const Vra& v);

struct CodetReport {
  bool codeterministic = false;
  /// On failure: the clashing symbols and a word in both recursive languages.
  std::optional<std::pair<Symbol, Symbol>> conflict;
  std::optional<Word> witness;
};

/// Modules sharing a call/return pair have pairwise disjoint recursive
/// languages. Decided by one intersection construction plus the emptiness
/// fixpoint; the witness is read off the reachability certificate.
CodetReport is_codeterministic(const Vra& v);

struct CompleteReport {
  bool complete = false;
  std::vector<Diagnostic> diagnostics;
  /// Failing ⟨c,r⟩ pair of the covering condition, if that is what failed.
  std::optional<std::pair<Symbol, Symbol>> failing_pair;
  std::optional<Word> missing_word;
};

/// Every FA complete over Σ_int ∪ Σ_proc and, per call/return pair, the
/// modules' recursive languages cover all well-matched words.
CompleteReport is_complete(const Vra& v);

enum class CodetTrim {
  Off,  // literal construction: full powersets and full products
  On,   // per-automaton reachable parts (languages unchanged)
};

struct CodetCompleteResult {
  Vra vra;
  std::vector<ProcSubsetSymbol> subset_symbols;  // Σ'_proc, sorted by symbol
};

/// The codeterministic-complete normal form: Σ'_proc is the per-pair powerset
/// of Σ_proc, modules are final-selected products of the relabeled subset
/// DFAs, and the start is the relabeled subset DFA of the source start.
CodetCompleteResult codet_complete(const Vra& v, CodetTrim trim = CodetTrim::Off);

/// Structural gate used by the fast complement path: every call/return pair
/// has a non-empty group of complete DFA modules whose regular languages
/// partition (Σ_int ∪ Σ_proc)*. The start automaton is not constrained;
/// factor abstractions are unique whenever this holds.
bool has_partition_modules(const Vra& v);

/// has_partition_modules plus the start being a complete DFA. Sufficient for
/// codeterminism + completeness.
bool has_regular_partition_form(const Vra& v);

}  // namespace vra
