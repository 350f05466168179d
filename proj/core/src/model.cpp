#include "vra/model.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "vra/errors.hpp"

namespace vra {

namespace {

struct InternPool {
  std::mutex mu;
  std::unordered_map<std::string, int> ids;
  std::vector<std::string> names;

  int intern(std::string_view name) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = ids.find(std::string(name));
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(names.size());
    names.emplace_back(name);
    ids.emplace(names.back(), id);
    return id;
  }

  const std::string& name_of(int id) {
    std::lock_guard<std::mutex> lock(mu);
    return names.at(static_cast<std::size_t>(id));
  }
};

InternPool& pool() {
  static InternPool p;
  return p;
}

template <typename T>
void sort_unique(std::vector<T>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

bool sorted_contains(const std::vector<Symbol>& xs, Symbol s) {
  return std::find(xs.begin(), xs.end(), s) != xs.end();
}

}  // namespace

Symbol::Symbol(std::string_view name) : id_(pool().intern(name)) {}

const std::string& Symbol::name() const {
  static const std::string invalid = "<invalid>";
  if (id_ < 0) return invalid;
  return pool().name_of(id_);
}

StateId FiniteAutomaton::add_state(std::string name) {
  StateId q = states.empty() ? 0 : states.back() + 1;
  states.push_back(q);
  names[q] = std::move(name);
  return q;
}

void FiniteAutomaton::add_transition(StateId src, Symbol label, StateId dst) {
  transitions.push_back({src, label, dst});
}

void FiniteAutomaton::mark_initial(StateId q) { initials.push_back(q); }

void FiniteAutomaton::mark_final(StateId q) { finals.push_back(q); }

bool FiniteAutomaton::has_state(StateId q) const {
  return std::binary_search(states.begin(), states.end(), q);
}

bool FiniteAutomaton::is_initial(StateId q) const {
  return std::binary_search(initials.begin(), initials.end(), q);
}

bool FiniteAutomaton::is_final(StateId q) const {
  return std::binary_search(finals.begin(), finals.end(), q);
}

const std::string& FiniteAutomaton::name_of(StateId q) const {
  static thread_local std::string fallback;
  auto it = names.find(q);
  if (it != names.end()) return it->second;
  fallback = "q" + std::to_string(q);
  return fallback;
}

bool FiniteAutomaton::deterministic() const {
  if (initials.size() != 1) return false;
  std::set<std::pair<StateId, Symbol>> seen;
  for (const auto& t : transitions) {
    if (!seen.insert({t.src, t.label}).second) return false;
  }
  return true;
}

bool FiniteAutomaton::complete(const std::vector<Symbol>& labels) const {
  std::set<std::pair<StateId, Symbol>> seen;
  for (const auto& t : transitions) seen.insert({t.src, t.label});
  for (StateId q : states) {
    for (Symbol a : labels) {
      if (!seen.count({q, a})) return false;
    }
  }
  return true;
}

void FiniteAutomaton::normalize() {
  sort_unique(states);
  sort_unique(initials);
  sort_unique(finals);
  sort_unique(transitions);
}

bool PushdownAlphabet::is_internal(Symbol s) const { return sorted_contains(internal, s); }
bool PushdownAlphabet::is_call(Symbol s) const { return sorted_contains(call, s); }
bool PushdownAlphabet::is_ret(Symbol s) const { return sorted_contains(ret, s); }
bool PushdownAlphabet::contains(Symbol s) const {
  return is_internal(s) || is_call(s) || is_ret(s);
}

std::vector<Symbol> ProceduralAlphabet::symbols() const {
  std::vector<Symbol> out;
  out.reserve(link.size());
  for (const auto& [sym, _] : link) out.push_back(sym);
  return out;
}

std::vector<Symbol> ProceduralAlphabet::group(Symbol call, Symbol ret) const {
  std::vector<Symbol> out;
  for (const auto& [sym, lk] : link) {
    if (lk.call == call && lk.ret == ret) out.push_back(sym);
  }
  return out;
}

const FiniteAutomaton& Vra::automaton(const ModuleTag& tag) const {
  if (tag.is_start()) return start;
  auto it = modules.find(*tag.proc);
  if (it == modules.end()) throw Error("no module for symbol " + tag.proc->name());
  return it->second;
}

std::vector<ModuleTag> Vra::module_tags() const {
  std::vector<ModuleTag> tags;
  tags.push_back(ModuleTag::start());
  for (const auto& [sym, _] : modules) tags.push_back(ModuleTag::module(sym));
  return tags;
}

std::vector<Symbol> Vra::fa_labels() const {
  std::vector<Symbol> labels = alphabet.internal;
  for (const auto& [sym, _] : procs.link) labels.push_back(sym);
  std::sort(labels.begin(), labels.end());
  return labels;
}

ModuleTag Vra::module_of(StateId q) const {
  if (start.has_state(q)) return ModuleTag::start();
  for (const auto& [sym, fa] : modules) {
    if (fa.has_state(q)) return ModuleTag::module(sym);
  }
  throw Error("state " + std::to_string(q) + " belongs to no module");
}

std::size_t Vra::state_count() const {
  std::size_t n = start.states.size();
  for (const auto& [_, fa] : modules) n += fa.states.size();
  return n;
}

std::size_t Vra::transition_count() const {
  std::size_t n = start.transitions.size();
  for (const auto& [_, fa] : modules) n += fa.transitions.size();
  return n;
}

std::string Word::display() const {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ' ';
    out += letters[i].name();
  }
  return out;
}

bool operator<(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.letters.begin(), a.letters.end(),
                                      b.letters.begin(), b.letters.end());
}

Word operator+(const Word& a, const Word& b) {
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

Word Decomposition::reassemble() const {
  Word out = runs.empty() ? Word{} : runs[0];
  for (std::size_t i = 0; i < brackets.size(); ++i) {
    out.letters.push_back(brackets[i].call);
    out.letters.insert(out.letters.end(), brackets[i].inner.letters.begin(),
                       brackets[i].inner.letters.end());
    out.letters.push_back(brackets[i].ret);
    if (i + 1 < runs.size()) {
      out.letters.insert(out.letters.end(), runs[i + 1].letters.begin(),
                         runs[i + 1].letters.end());
    }
  }
  return out;
}

WellMatchedInfo classify(const Word& w, const PushdownAlphabet& a) {
  for (Symbol s : w.letters) {
    if (!a.contains(s)) throw UnknownSymbolError(s.name());
  }

  WellMatchedInfo info;
  int depth = 0, max_depth = 0;
  Decomposition dec;
  dec.runs.emplace_back();
  std::size_t bracket_start = 0;
  Symbol bracket_call;

  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    Symbol s = w.letters[i];
    if (a.is_internal(s)) {
      if (depth == 0) dec.runs.back().letters.push_back(s);
    } else if (a.is_call(s)) {
      if (depth == 0) {
        bracket_start = i;
        bracket_call = s;
      }
      ++depth;
      max_depth = std::max(max_depth, depth);
    } else {
      if (depth == 0) {
        info.is_well_matched = false;
        return info;
      }
      --depth;
      if (depth == 0) {
        BracketFactor f;
        f.call = bracket_call;
        f.ret = s;
        f.inner.letters.assign(w.letters.begin() + bracket_start + 1,
                               w.letters.begin() + i);
        dec.brackets.push_back(std::move(f));
        dec.runs.emplace_back();
      }
    }
  }
  if (depth != 0) {
    info.is_well_matched = false;
    return info;
  }
  info.is_well_matched = true;
  info.depth = max_depth;
  info.decomposition = std::move(dec);
  return info;
}

namespace {

void check_fa(const Vra& v, const ModuleTag& tag, const FiniteAutomaton& fa,
              std::vector<Diagnostic>& out) {
  const std::string where = "module " + tag.display();
  for (StateId q : fa.initials) {
    if (!fa.has_state(q))
      out.push_back({"undeclared-state", where + ": initial state " +
                                             std::to_string(q) + " not declared"});
  }
  for (StateId q : fa.finals) {
    if (!fa.has_state(q))
      out.push_back({"undeclared-state", where + ": final state " +
                                             std::to_string(q) + " not declared"});
  }
  for (const auto& t : fa.transitions) {
    if (!fa.has_state(t.src) || !fa.has_state(t.dst)) {
      out.push_back({"undeclared-state",
                     where + ": transition " + fa.name_of(t.src) + " -" +
                         t.label.name() + "-> " + fa.name_of(t.dst) +
                         " references an undeclared state"});
      continue;
    }
    if (!v.alphabet.is_internal(t.label) && !v.procs.contains(t.label)) {
      out.push_back({"bad-label", where + ": transition label " + t.label.name() +
                                      " is neither internal nor procedural"});
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate_vra(const Vra& v) {
  std::vector<Diagnostic> out;

  auto overlap = [](const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    std::vector<Symbol> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(both));
    return both;
  };
  for (Symbol s : overlap(v.alphabet.internal, v.alphabet.call)) {
    out.push_back({"alphabet-overlap", "symbol " + s.name() + " is both internal and call"});
  }
  for (Symbol s : overlap(v.alphabet.internal, v.alphabet.ret)) {
    out.push_back({"alphabet-overlap", "symbol " + s.name() + " is both internal and return"});
  }
  for (Symbol s : overlap(v.alphabet.call, v.alphabet.ret)) {
    out.push_back({"alphabet-overlap", "symbol " + s.name() + " is both call and return"});
  }

  for (const auto& [sym, lk] : v.procs.link) {
    if (v.alphabet.contains(sym)) {
      out.push_back({"proc-overlap",
                     "procedural symbol " + sym.name() + " also appears in the pushdown alphabet"});
    }
    if (sym.name() == "S") {
      out.push_back({"proc-overlap", "procedural symbol may not use the reserved starting tag S"});
    }
    if (!v.alphabet.is_call(lk.call)) {
      out.push_back({"bad-linking", "f(" + sym.name() + ") uses " + lk.call.name() +
                                        " which is not a call symbol"});
    }
    if (!v.alphabet.is_ret(lk.ret)) {
      out.push_back({"bad-linking", "f(" + sym.name() + ") uses " + lk.ret.name() +
                                        " which is not a return symbol"});
    }
    if (!v.modules.count(sym)) {
      out.push_back({"missing-module", "no automaton for procedural symbol " + sym.name()});
    }
  }
  for (const auto& [sym, _] : v.modules) {
    if (!v.procs.contains(sym)) {
      out.push_back({"orphan-module",
                     "automaton for " + sym.name() + " has no procedural symbol"});
    }
  }

  // State namespaces of all FAs must be pairwise disjoint.
  std::map<StateId, std::string> owner;
  auto note_states = [&](const ModuleTag& tag, const FiniteAutomaton& fa) {
    for (StateId q : fa.states) {
      auto [it, fresh] = owner.emplace(q, tag.display());
      if (!fresh) {
        out.push_back({"state-overlap", "state " + std::to_string(q) + " (" +
                                            fa.name_of(q) + ") appears in modules " +
                                            it->second + " and " + tag.display()});
      }
    }
  };
  note_states(ModuleTag::start(), v.start);
  for (const auto& [sym, fa] : v.modules) note_states(ModuleTag::module(sym), fa);

  check_fa(v, ModuleTag::start(), v.start, out);
  for (const auto& [sym, fa] : v.modules) check_fa(v, ModuleTag::module(sym), fa, out);
  return out;
}

void require_valid(const Vra& v) {
  auto diags = validate_vra(v);
  if (!diags.empty()) {
    std::ostringstream msg;
    msg << "invalid VRA:";
    for (const auto& d : diags) msg << " [" << d.code << "] " << d.message << ";";
    throw InvalidVraError(msg.str());
  }
}

namespace {

FiniteAutomaton shift_states(const FiniteAutomaton& fa, StateId base) {
  FiniteAutomaton out;
  std::map<StateId, StateId> remap;
  StateId next = base;
  for (StateId q : fa.states) {
    remap[q] = next;
    out.states.push_back(next);
    auto it = fa.names.find(q);
    out.names[next] = it != fa.names.end() ? it->second : "q" + std::to_string(q);
    ++next;
  }
  for (StateId q : fa.initials) out.initials.push_back(remap.at(q));
  for (StateId q : fa.finals) out.finals.push_back(remap.at(q));
  for (const auto& t : fa.transitions) {
    out.transitions.push_back({remap.at(t.src), t.label, remap.at(t.dst)});
  }
  out.normalize();
  return out;
}

}  // namespace

Vra make_vra(PushdownAlphabet alphabet, ProceduralAlphabet procs,
             std::map<Symbol, FiniteAutomaton> modules, FiniteAutomaton start) {
  Vra out;
  out.alphabet = std::move(alphabet);
  out.procs = std::move(procs);
  StateId base = 0;
  out.start = shift_states(start, base);
  base += static_cast<StateId>(start.states.size());
  for (auto& [sym, fa] : modules) {
    out.modules[sym] = shift_states(fa, base);
    base += static_cast<StateId>(fa.states.size());
  }
  return out;
}

}  // namespace vra
