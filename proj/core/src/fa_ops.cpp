#include "vra/fa_ops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "vra/errors.hpp"

namespace vra {

namespace {

using StateSet = std::vector<StateId>;  // sorted unique

std::string subset_name(const FiniteAutomaton& fa, const StateSet& subset) {
  std::vector<std::string> parts;
  parts.reserve(subset.size());
  for (StateId q : subset) parts.push_back(fa.name_of(q));
  std::sort(parts.begin(), parts.end());
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  out += '}';
  return out;
}

std::map<std::pair<StateId, Symbol>, StateSet> successor_table(const FiniteAutomaton& fa) {
  std::map<std::pair<StateId, Symbol>, StateSet> succ;
  for (const auto& t : fa.transitions) succ[{t.src, t.label}].push_back(t.dst);
  for (auto& [_, dsts] : succ) {
    std::sort(dsts.begin(), dsts.end());
    dsts.erase(std::unique(dsts.begin(), dsts.end()), dsts.end());
  }
  return succ;
}

std::vector<StateSet> all_subsets(const StateSet& states) {
  std::vector<StateSet> out;
  const std::size_t n = states.size();
  out.reserve(static_cast<std::size_t>(1) << n);
  for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << n); ++mask) {
    StateSet subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (static_cast<std::size_t>(1) << i)) subset.push_back(states[i]);
    }
    out.push_back(std::move(subset));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FiniteAutomaton determinize_complete(const FiniteAutomaton& fa,
                                     const std::vector<Symbol>& labels,
                                     SubsetScope scope) {
  auto succ = successor_table(fa);

  StateSet start(fa.initials.begin(), fa.initials.end());
  auto step_subset = [&](const StateSet& subset, Symbol a) {
    StateSet next;
    for (StateId q : subset) {
      auto it = succ.find({q, a});
      if (it == succ.end()) continue;
      next.insert(next.end(), it->second.begin(), it->second.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return next;
  };

  std::map<StateSet, StateId> index;
  std::vector<StateSet> order;
  auto intern = [&](const StateSet& subset) {
    auto [it, fresh] = index.emplace(subset, static_cast<StateId>(order.size()));
    if (fresh) order.push_back(subset);
    return it->second;
  };

  FiniteAutomaton out;
  if (scope == SubsetScope::Full) {
    for (const auto& subset : all_subsets(fa.states)) intern(subset);
    for (const auto& [subset, id] : index) {
      (void)id;
      for (Symbol a : labels) {
        StateId dst = intern(step_subset(subset, a));
        out.transitions.push_back({index.at(subset), a, dst});
      }
    }
  } else {
    std::deque<StateSet> todo;
    intern(start);
    todo.push_back(start);
    while (!todo.empty()) {
      StateSet subset = todo.front();
      todo.pop_front();
      StateId src = index.at(subset);
      for (Symbol a : labels) {
        StateSet next = step_subset(subset, a);
        bool fresh = index.find(next) == index.end();
        StateId dst = intern(next);
        if (fresh) todo.push_back(next);
        out.transitions.push_back({src, a, dst});
      }
    }
  }

  for (const auto& [subset, id] : index) {
    out.states.push_back(id);
    out.names[id] = subset_name(fa, subset);
    bool has_final = std::any_of(subset.begin(), subset.end(),
                                 [&](StateId q) { return fa.is_final(q); });
    if (has_final) out.finals.push_back(id);
  }
  out.initials.push_back(index.at(start));
  out.normalize();
  return out;
}

FiniteAutomaton relabel_to_supersets(const FiniteAutomaton& fa,
                                     const std::vector<Symbol>& new_labels,
                                     const std::map<Symbol, std::vector<Symbol>>& expand) {
  FiniteAutomaton out = fa;
  out.transitions.clear();
  for (const auto& t : fa.transitions) {
    auto it = expand.find(t.label);
    if (it != expand.end()) {
      for (Symbol bigger : it->second) out.transitions.push_back({t.src, bigger, t.dst});
    } else if (std::find(new_labels.begin(), new_labels.end(), t.label) !=
               new_labels.end()) {
      out.transitions.push_back(t);
    } else {
      throw MissingExpansionError("label " + t.label.name() +
                                  " has no expansion and is not kept");
    }
  }
  out.normalize();
  return out;
}

FiniteAutomaton product_select(const std::vector<FiniteAutomaton>& fas,
                               const std::vector<FinalSelector>& selectors,
                               const std::vector<Symbol>& labels,
                               ProductScope scope) {
  if (fas.size() != selectors.size()) {
    throw Error("product_select: one selector per component required");
  }
  for (const auto& fa : fas) {
    if (!fa.deterministic() || !fa.complete(labels)) {
      throw NotDeterministicCompleteError(
          "product_select requires deterministic complete components");
    }
  }

  if (fas.empty()) {
    // Empty intersection convention: accept everything.
    FiniteAutomaton out;
    StateId q = out.add_state("()");
    out.mark_initial(q);
    out.mark_final(q);
    for (Symbol a : labels) out.add_transition(q, a, q);
    out.normalize();
    return out;
  }

  std::vector<std::map<std::pair<StateId, Symbol>, StateId>> step;
  step.reserve(fas.size());
  for (const auto& fa : fas) {
    std::map<std::pair<StateId, Symbol>, StateId> m;
    for (const auto& t : fa.transitions) m[{t.src, t.label}] = t.dst;
    step.push_back(std::move(m));
  }

  using Tuple = std::vector<StateId>;
  auto tuple_name = [&](const Tuple& tup) {
    std::string out = "(";
    for (std::size_t i = 0; i < tup.size(); ++i) {
      if (i) out += ',';
      out += fas[i].name_of(tup[i]);
    }
    out += ')';
    return out;
  };
  auto is_final_tuple = [&](const Tuple& tup) {
    for (std::size_t i = 0; i < tup.size(); ++i) {
      bool f = fas[i].is_final(tup[i]);
      if (selectors[i] == FinalSelector::CoFinals) f = !f;
      if (!f) return false;
    }
    return true;
  };

  std::map<Tuple, StateId> index;
  std::vector<Tuple> order;
  auto intern = [&](const Tuple& tup) {
    auto [it, fresh] = index.emplace(tup, static_cast<StateId>(order.size()));
    if (fresh) order.push_back(tup);
    return it->second;
  };

  Tuple start;
  for (const auto& fa : fas) start.push_back(fa.initials.front());

  FiniteAutomaton out;
  auto expand_tuple = [&](const Tuple& tup, auto&& on_fresh) {
    StateId src = index.at(tup);
    for (Symbol a : labels) {
      Tuple next;
      next.reserve(tup.size());
      for (std::size_t i = 0; i < tup.size(); ++i) next.push_back(step[i].at({tup[i], a}));
      bool fresh = index.find(next) == index.end();
      StateId dst = intern(next);
      if (fresh) on_fresh(next);
      out.transitions.push_back({src, a, dst});
    }
  };

  if (scope == ProductScope::Full) {
    // Materialize the whole Cartesian product in lexicographic order.
    Tuple tup(fas.size());
    std::vector<std::size_t> pos(fas.size(), 0);
    bool done = false;
    while (!done) {
      for (std::size_t i = 0; i < fas.size(); ++i) tup[i] = fas[i].states[pos[i]];
      intern(tup);
      std::size_t i = fas.size();
      while (i > 0) {
        --i;
        if (++pos[i] < fas[i].states.size()) break;
        pos[i] = 0;
        if (i == 0) done = true;
      }
      if (fas.empty()) break;
    }
    for (const auto& [t, _] : index) expand_tuple(t, [](const Tuple&) {});
  } else {
    std::deque<Tuple> todo;
    intern(start);
    todo.push_back(start);
    while (!todo.empty()) {
      Tuple tup = todo.front();
      todo.pop_front();
      expand_tuple(tup, [&](const Tuple& fresh) { todo.push_back(fresh); });
    }
  }

  for (const auto& [tup, id] : index) {
    out.states.push_back(id);
    out.names[id] = tuple_name(tup);
    if (is_final_tuple(tup)) out.finals.push_back(id);
  }
  out.initials.push_back(index.at(start));
  out.normalize();
  return out;
}

namespace {

/// Copies a into out with fresh ids starting at base; returns old->new map.
std::map<StateId, StateId> splice(const FiniteAutomaton& a, StateId base,
                                  FiniteAutomaton& out) {
  std::map<StateId, StateId> remap;
  StateId next = base;
  for (StateId q : a.states) {
    remap[q] = next;
    out.states.push_back(next);
    out.names[next] = a.name_of(q);
    ++next;
  }
  for (const auto& t : a.transitions) {
    out.transitions.push_back({remap.at(t.src), t.label, remap.at(t.dst)});
  }
  return remap;
}

}  // namespace

FiniteAutomaton fa_concat(const FiniteAutomaton& a, const FiniteAutomaton& b) {
  FiniteAutomaton out;
  auto ra = splice(a, 0, out);
  auto rb = splice(b, static_cast<StateId>(a.states.size()), out);

  for (StateId q : a.initials) out.initials.push_back(ra.at(q));
  bool a_accepts_eps = false;
  for (StateId q : a.initials) a_accepts_eps |= a.is_final(q);
  if (a_accepts_eps) {
    for (StateId q : b.initials) out.initials.push_back(rb.at(q));
  }

  for (StateId q : b.finals) out.finals.push_back(rb.at(q));
  bool b_accepts_eps = false;
  for (StateId q : b.initials) b_accepts_eps |= b.is_final(q);
  if (b_accepts_eps) {
    for (StateId q : a.finals) out.finals.push_back(ra.at(q));
  }

  // Bridge: transitions entering a final of a are duplicated onto b's initials.
  for (const auto& t : a.transitions) {
    if (a.is_final(t.dst)) {
      for (StateId i2 : b.initials) out.transitions.push_back({ra.at(t.src), t.label, rb.at(i2)});
    }
  }
  out.normalize();
  return out;
}

FiniteAutomaton fa_star(const FiniteAutomaton& a) {
  FiniteAutomaton out;
  auto ra = splice(a, 1, out);
  StateId hub = 0;
  out.states.push_back(hub);
  out.names[hub] = "*";
  out.initials.push_back(hub);
  out.finals.push_back(hub);
  for (StateId q : a.finals) out.finals.push_back(ra.at(q));

  // Transitions into finals loop back to the initials, then the fresh hub
  // mimics every transition leaving an initial (loop-backs included).
  std::vector<Transition> enriched = a.transitions;
  for (const auto& t : a.transitions) {
    if (a.is_final(t.dst)) {
      for (StateId i : a.initials) enriched.push_back({t.src, t.label, i});
    }
  }
  for (const auto& t : enriched) {
    out.transitions.push_back({ra.at(t.src), t.label, ra.at(t.dst)});
    if (a.is_initial(t.src)) out.transitions.push_back({hub, t.label, ra.at(t.dst)});
  }
  out.normalize();
  return out;
}

FiniteAutomaton fa_union(const FiniteAutomaton& a, const FiniteAutomaton& b) {
  FiniteAutomaton out;
  auto ra = splice(a, 0, out);
  auto rb = splice(b, static_cast<StateId>(a.states.size()), out);
  for (StateId q : a.initials) out.initials.push_back(ra.at(q));
  for (StateId q : b.initials) out.initials.push_back(rb.at(q));
  for (StateId q : a.finals) out.finals.push_back(ra.at(q));
  for (StateId q : b.finals) out.finals.push_back(rb.at(q));
  out.normalize();
  return out;
}

FiniteAutomaton fa_complement_dfa(const FiniteAutomaton& a,
                                  const std::vector<Symbol>& labels) {
  if (!a.deterministic() || !a.complete(labels)) {
    throw NotDeterministicCompleteError(
        "fa_complement_dfa requires a deterministic complete automaton");
  }
  FiniteAutomaton out = a;
  out.finals.clear();
  for (StateId q : a.states) {
    if (!a.is_final(q)) out.finals.push_back(q);
  }
  out.normalize();
  return out;
}

bool fa_member(const FiniteAutomaton& fa, const std::vector<Symbol>& word) {
  auto succ = successor_table(fa);
  StateSet current(fa.initials.begin(), fa.initials.end());
  for (Symbol a : word) {
    StateSet next;
    for (StateId q : current) {
      auto it = succ.find({q, a});
      if (it == succ.end()) continue;
      next.insert(next.end(), it->second.begin(), it->second.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(),
                     [&](StateId q) { return fa.is_final(q); });
}

FiniteAutomaton renumber(const FiniteAutomaton& fa, StateId base) {
  FiniteAutomaton out;
  std::map<StateId, StateId> remap;
  StateId next = base;
  for (StateId q : fa.states) {
    remap[q] = next;
    out.states.push_back(next);
    out.names[next] = fa.name_of(q);
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

std::vector<Symbol> fa_labels_used(const FiniteAutomaton& fa) {
  std::vector<Symbol> out;
  for (const auto& t : fa.transitions) out.push_back(t.label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace vra
