#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vra {

/// Interned alphabet symbol. Identity and ordering follow the display name,
/// so canonical output does not depend on interning order.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  const std::string& name() const;
  int id() const { return id_; }
  bool valid() const { return id_ >= 0; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
    if (a.id_ == b.id_) return std::strong_ordering::equal;
    return a.name() <=> b.name();
  }

 private:
  int id_ = -1;
};

using StateId = std::int32_t;

struct Transition {
  StateId src = -1;
  Symbol label;
  StateId dst = -1;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// A classical FA over an externally fixed label set. States are opaque
/// integers carrying a display name used by serialization and DOT export.
struct FiniteAutomaton {
  std::vector<StateId> states;      // sorted, unique
  std::vector<StateId> initials;    // sorted subset of states
  std::vector<StateId> finals;      // sorted subset of states
  std::vector<Transition> transitions;  // sorted, unique
  std::map<StateId, std::string> names;

  StateId add_state(std::string name);
  void add_transition(StateId src, Symbol label, StateId dst);
  void mark_initial(StateId q);
  void mark_final(StateId q);

  bool has_state(StateId q) const;
  bool is_initial(StateId q) const;
  bool is_final(StateId q) const;
  const std::string& name_of(StateId q) const;

  /// |I| = 1 and no (state, label) pair has two outgoing transitions.
  bool deterministic() const;
  /// Every (state, label) pair with label in `labels` has a transition.
  bool complete(const std::vector<Symbol>& labels) const;

  void normalize();  // sort + dedupe all vectors
};

struct PushdownAlphabet {
  std::vector<Symbol> internal;  // sorted
  std::vector<Symbol> call;      // sorted
  std::vector<Symbol> ret;       // sorted

  bool is_internal(Symbol s) const;
  bool is_call(Symbol s) const;
  bool is_ret(Symbol s) const;
  bool contains(Symbol s) const;

  friend bool operator==(const PushdownAlphabet&, const PushdownAlphabet&) = default;
};

/// Linking data for one procedural symbol. `members` is non-empty provenance
/// only for subset symbols produced by the codeterministic-complete
/// construction; it lists the source symbols and plays no role in semantics.
struct ProcLink {
  Symbol call;
  Symbol ret;
  std::vector<Symbol> members;
  bool is_subset = false;

  friend bool operator==(const ProcLink&, const ProcLink&) = default;
};

struct ProceduralAlphabet {
  std::map<Symbol, ProcLink> link;

  bool contains(Symbol s) const { return link.count(s) != 0; }
  std::vector<Symbol> symbols() const;
  /// Σ_proc^⟨c,r⟩: symbols linked to the given call/return pair.
  std::vector<Symbol> group(Symbol call, Symbol ret) const;
};

/// Identifies one module automaton of a VRA: either the starting automaton
/// (the reserved tag, not a member of Σ_proc) or a procedural symbol.
struct ModuleTag {
  std::optional<Symbol> proc;

  static ModuleTag start() { return {}; }
  static ModuleTag module(Symbol s) { return {s}; }
  bool is_start() const { return !proc.has_value(); }
  std::string display() const { return is_start() ? "S" : proc->name(); }

  friend bool operator==(const ModuleTag&, const ModuleTag&) = default;
  friend bool operator<(const ModuleTag& a, const ModuleTag& b) {
    if (a.is_start() != b.is_start()) return a.is_start();
    if (a.is_start()) return false;
    return *a.proc < *b.proc;
  }
};

struct Vra {
  PushdownAlphabet alphabet;
  ProceduralAlphabet procs;
  std::map<Symbol, FiniteAutomaton> modules;  // the family Λ
  FiniteAutomaton start;

  const FiniteAutomaton& automaton(const ModuleTag& tag) const;
  std::vector<ModuleTag> module_tags() const;  // start first, then Λ sorted
  /// Σ_int ∪ Σ_proc, the label universe of all module FAs.
  std::vector<Symbol> fa_labels() const;
  ModuleTag module_of(StateId q) const;

  std::size_t state_count() const;
  std::size_t transition_count() const;
  /// |A| = |S_A| + |δ_A|.
  std::size_t size() const { return state_count() + transition_count(); }
};

struct Word {
  std::vector<Symbol> letters;

  Word() = default;
  explicit Word(std::vector<Symbol> ls) : letters(std::move(ls)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  std::string display() const;  // space-separated symbol names

  friend bool operator==(const Word&, const Word&) = default;
  friend bool operator<(const Word& a, const Word& b);
};

Word operator+(const Word& a, const Word& b);

struct BracketFactor {
  Symbol call;
  Word inner;
  Symbol ret;
};

/// w = runs[0] · (call_0 inner_0 ret_0) · runs[1] · ... · runs[n];
/// runs has exactly brackets.size() + 1 entries.
struct Decomposition {
  std::vector<Word> runs;
  std::vector<BracketFactor> brackets;

  Word reassemble() const;
};

struct WellMatchedInfo {
  bool is_well_matched = false;
  int depth = 0;
  std::optional<Decomposition> decomposition;
};

struct Diagnostic {
  std::string code;
  std::string message;
};

/// Classifies a word against Def.-2 well-matchedness; populates depth and the
/// top-level decomposition when the word is well matched.
WellMatchedInfo classify(const Word& w, const PushdownAlphabet& a);

/// Checks every structural invariant of the VRA type; an empty result means
/// the value is well formed.
std::vector<Diagnostic> validate_vra(const Vra& v);

/// Throws InvalidVraError when validate_vra reports anything.
void require_valid(const Vra& v);

/// Assembles a VRA, renumbering every automaton into disjoint id ranges
/// (start first, then modules in symbol order) so the Def.-4 disjointness
/// assumption holds by construction. Display names are preserved.
Vra make_vra(PushdownAlphabet alphabet, ProceduralAlphabet procs,
             std::map<Symbol, FiniteAutomaton> modules, FiniteAutomaton start);

}  // namespace vra
