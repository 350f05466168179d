#include "vra/decisions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "vra/errors.hpp"
#include "vra/lang_ops.hpp"

namespace vra {

ReachAnalysis::ReachAnalysis(const Vra& v) : v_(&v) {
  // Adjacency once, so each transition is touched O(1) times plus the
  // per-symbol replay below.
  std::map<StateId, std::vector<std::pair<Symbol, StateId>>> out_edges;
  std::map<Symbol, std::vector<std::pair<StateId, StateId>>> edges_by_symbol;
  std::map<StateId, Symbol> owner;  // state -> procedural module (if not start)
  for (const auto& tag : v.module_tags()) {
    const auto& fa = v.automaton(tag);
    for (const auto& t : fa.transitions) {
      out_edges[t.src].push_back({t.label, t.dst});
      if (v.procs.contains(t.label)) edges_by_symbol[t.label].push_back({t.src, t.dst});
    }
    if (!tag.is_start()) {
      for (StateId q : fa.states) owner.emplace(q, *tag.proc);
    }
  }

  std::set<StateId> in_reach, done;
  std::set<Symbol> enabled;
  std::deque<StateId> queue;
  auto discover = [&](StateId p, StateId from, Symbol label) {
    if (done.count(p) || in_reach.count(p)) return;
    in_reach.insert(p);
    queue.push_back(p);
    if (from >= 0) pred_.emplace(p, std::make_pair(from, label));
  };

  for (const auto& tag : v.module_tags()) {
    for (StateId q : v.automaton(tag).initials) discover(q, -1, Symbol{});
  }

  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    in_reach.erase(q);
    done.insert(q);

    auto it = out_edges.find(q);
    if (it != out_edges.end()) {
      for (const auto& [label, dst] : it->second) {
        bool usable = v.alphabet.is_internal(label) ||
                      (v.procs.contains(label) && enabled.count(label));
        if (usable) discover(dst, q, label);
      }
    }

    auto ow = owner.find(q);
    if (ow != owner.end() && !enabled.count(ow->second) &&
        v.modules.at(ow->second).is_final(q)) {
      Symbol k = ow->second;
      enabled.insert(k);
      enabling_final_.emplace(k, q);
      // Replay k-transitions from everything processed so far; edges from
      // states processed later are caught by the usable check above.
      auto eb = edges_by_symbol.find(k);
      if (eb != edges_by_symbol.end()) {
        for (const auto& [src, dst] : eb->second) {
          if (done.count(src)) discover(dst, src, k);
        }
      }
    }
  }

  reach_.assign(done.begin(), done.end());
  enabled_.assign(enabled.begin(), enabled.end());
}

bool ReachAnalysis::module_nonempty(const ModuleTag& tag) const {
  const auto& fa = v_->automaton(tag);
  for (StateId f : fa.finals) {
    if (std::binary_search(reach_.begin(), reach_.end(), f)) return true;
  }
  return false;
}

Word ReachAnalysis::expand_state(StateId q) const {
  auto it = pred_.find(q);
  if (it == pred_.end()) return Word{};  // an initial state
  const auto& [from, label] = it->second;
  Word prefix = expand_state(from);
  if (v_->alphabet.is_internal(label)) {
    prefix.letters.push_back(label);
    return prefix;
  }
  // Procedural edge: replace the symbol by call · (module witness) · return.
  const auto& lk = v_->procs.link.at(label);
  auto memo = memo_.find(label.id());
  if (memo == memo_.end()) {
    Word inner = expand_state(enabling_final_.at(label));
    memo = memo_.emplace(label.id(), std::move(inner)).first;
  }
  prefix.letters.push_back(lk.call);
  prefix.letters.insert(prefix.letters.end(), memo->second.letters.begin(),
                        memo->second.letters.end());
  prefix.letters.push_back(lk.ret);
  return prefix;
}

Word ReachAnalysis::witness(const ModuleTag& tag) const {
  const auto& fa = v_->automaton(tag);
  for (StateId f : fa.finals) {
    if (std::binary_search(reach_.begin(), reach_.end(), f)) return expand_state(f);
  }
  throw Error("witness requested for a module with empty language");
}

namespace {

/// Language-preserving diet used on intermediate automata of the inclusion
/// and equivalence reductions: a procedural transition on an empty-language
/// module can never fire, modules no remaining transition mentions can never
/// run, and states unreachable in the regular sense carry no run. The
/// construction results handed to callers are never pruned.
Vra prune_useless(const Vra& v) {
  ReachAnalysis analysis(v);
  std::set<Symbol> alive(analysis.enabled().begin(), analysis.enabled().end());

  auto strip = [&](const FiniteAutomaton& fa) {
    FiniteAutomaton out = fa;
    out.transitions.clear();
    for (const auto& t : fa.transitions) {
      if (v.alphabet.is_internal(t.label) || alive.count(t.label)) {
        out.transitions.push_back(t);
      }
    }
    // Regular reachability from the initials.
    std::set<StateId> reach(out.initials.begin(), out.initials.end());
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& t : out.transitions) {
        if (reach.count(t.src) && reach.insert(t.dst).second) grew = true;
      }
    }
    FiniteAutomaton slim;
    slim.states.assign(reach.begin(), reach.end());
    for (StateId q : out.states) {
      if (reach.count(q)) slim.names[q] = out.name_of(q);
    }
    for (StateId q : out.initials) {
      if (reach.count(q)) slim.initials.push_back(q);
    }
    for (StateId q : out.finals) {
      if (reach.count(q)) slim.finals.push_back(q);
    }
    for (const auto& t : out.transitions) {
      if (reach.count(t.src)) slim.transitions.push_back(t);
    }
    slim.normalize();
    return slim;
  };

  Vra out;
  out.alphabet = v.alphabet;
  out.start = strip(v.start);

  // Reference closure over the procedural labels the kept automata still use.
  std::map<Symbol, FiniteAutomaton> stripped;
  for (const auto& [sym, fa] : v.modules) {
    if (alive.count(sym)) stripped[sym] = strip(fa);
  }
  std::set<Symbol> referenced;
  std::deque<const FiniteAutomaton*> todo{&out.start};
  while (!todo.empty()) {
    const FiniteAutomaton* fa = todo.front();
    todo.pop_front();
    for (const auto& t : fa->transitions) {
      if (!v.procs.contains(t.label)) continue;
      if (referenced.insert(t.label).second && stripped.count(t.label)) {
        todo.push_back(&stripped.at(t.label));
      }
    }
  }
  for (auto& [sym, fa] : stripped) {
    if (!referenced.count(sym)) continue;
    out.procs.link[sym] = v.procs.link.at(sym);
    out.modules[sym] = std::move(fa);
  }
  return out;
}

}  // namespace

EmptinessResult is_empty(const Vra& v) {
  ReachAnalysis analysis(v);
  EmptinessResult out;
  out.certificate.reach = analysis.reach();
  out.certificate.enabled = analysis.enabled();
  out.empty = !analysis.module_nonempty(ModuleTag::start());
  if (!out.empty) out.certificate.witness = analysis.witness(ModuleTag::start());
  return out;
}

DecisionReport is_universal(const Vra& v) {
  EmptinessResult r = is_empty(vra_complement(v));
  return {r.empty, r.certificate.witness};
}

DecisionReport includes(const Vra& a, const Vra& b) {
  if (!(a.alphabet == b.alphabet)) {
    throw AlphabetMismatchError("includes: operands use different pushdown alphabets");
  }
  Vra not_b = prune_useless(vra_complement(b));
  EmptinessResult r = is_empty(vra_intersect(prune_useless(a), not_b));
  return {r.empty, r.certificate.witness};
}

DecisionReport equivalent(const Vra& a, const Vra& b) {
  DecisionReport fwd = includes(a, b);
  if (!fwd.holds) return fwd;
  return includes(b, a);
}

}  // namespace vra
