#include "vra/codet.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "vra/decisions.hpp"
#include "vra/errors.hpp"
#include "vra/fa_ops.hpp"
#include "vra/lang_ops.hpp"

namespace vra {

DetReport is_deterministic(const Vra& v) {
  DetReport report;
  report.deterministic = true;

  for (const auto& tag : v.module_tags()) {
    const auto& fa = v.automaton(tag);
    if (fa.initials.size() != 1) {
      report.deterministic = false;
      report.diagnostics.push_back(
          {"not-dfa", "module " + tag.display() + " has " +
                          std::to_string(fa.initials.size()) + " initial states"});
    }
    std::set<std::pair<StateId, Symbol>> seen;
    for (const auto& t : fa.transitions) {
      if (!seen.insert({t.src, t.label}).second) {
        report.deterministic = false;
        report.diagnostics.push_back(
            {"not-dfa", "module " + tag.display() + ": state " + fa.name_of(t.src) +
                            " has two transitions on " + t.label.name()});
      }
    }
    // Procedural branching on a shared call symbol.
    std::map<std::pair<StateId, Symbol>, Symbol> call_use;  // (state, call) -> J
    for (const auto& t : fa.transitions) {
      if (!v.procs.contains(t.label)) continue;
      Symbol call = v.procs.link.at(t.label).call;
      auto [it, fresh] = call_use.emplace(std::make_pair(t.src, call), t.label);
      if (!fresh && !(it->second == t.label)) {
        report.deterministic = false;
        report.diagnostics.push_back(
            {"call-conflict",
             "module " + tag.display() + ": state " + fa.name_of(t.src) +
                 " branches on " + it->second.name() + " and " + t.label.name() +
                 " which share call symbol " + call.name()});
      }
    }
  }
  return report;
}

bool is_spa(const Vra& v) {
  if (!is_deterministic(v).deterministic) return false;
  std::set<Symbol> calls;
  for (const auto& [sym, lk] : v.procs.link) {
    if (!calls.insert(lk.call).second) return false;
  }
  return true;
}

namespace {

/// Sound short-circuit: with complete DFA modules, walking each group's
/// synchronized product visits exactly one tuple per regular word, so no
/// tuple with two accepting components means pairwise disjoint regular
/// languages, which carries over to the recursive languages.
bool groups_regularly_disjoint(const Vra& v) {
  const auto labels = v.fa_labels();
  for (const auto& [sym, fa] : v.modules) {
    if (!fa.deterministic() || !fa.complete(labels)) return false;
  }
  for (Symbol c : v.alphabet.call) {
    for (Symbol r : v.alphabet.ret) {
      auto group = v.procs.group(c, r);
      if (group.size() < 2) continue;
      std::vector<const FiniteAutomaton*> fas;
      for (Symbol j : group) fas.push_back(&v.modules.at(j));
      std::vector<std::map<std::pair<StateId, Symbol>, StateId>> step(fas.size());
      for (std::size_t i = 0; i < fas.size(); ++i) {
        for (const auto& t : fas[i]->transitions) step[i][{t.src, t.label}] = t.dst;
      }
      using Tuple = std::vector<StateId>;
      Tuple start;
      for (const auto* fa : fas) start.push_back(fa->initials.front());
      std::set<Tuple> seen{start};
      std::deque<Tuple> todo{start};
      while (!todo.empty()) {
        Tuple tup = todo.front();
        todo.pop_front();
        int finals = 0;
        for (std::size_t i = 0; i < fas.size(); ++i) {
          if (fas[i]->is_final(tup[i])) ++finals;
        }
        if (finals > 1) return false;
        for (Symbol a : labels) {
          Tuple next;
          next.reserve(tup.size());
          for (std::size_t i = 0; i < fas.size(); ++i) next.push_back(step[i].at({tup[i], a}));
          if (seen.insert(next).second) todo.push_back(next);
        }
      }
    }
  }
  return true;
}

}  // namespace

CodetReport is_codeterministic(const Vra& v) {
  CodetReport report;
  report.codeterministic = true;

  bool has_shared_pair = false;
  std::map<std::pair<Symbol, Symbol>, int> group_sizes;
  for (const auto& [sym, lk] : v.procs.link) {
    if (++group_sizes[{lk.call, lk.ret}] > 1) has_shared_pair = true;
  }
  if (!has_shared_pair) return report;  // no pair of modules to compare
  if (groups_regularly_disjoint(v)) return report;

  // One intersection of the VRA with itself decides every pairwise
  // disjointness question at once: module ⟨J,J'⟩ of the product accepts
  // L(A^J) ∩ L(A^J'), and the reachability fixpoint marks every module with a
  // nonempty language.
  IntersectResult prod = vra_intersect_detailed(v, v);
  ReachAnalysis analysis(prod.vra);
  for (const auto& p : prod.pairs) {
    if (p.left == p.right) continue;
    ModuleTag tag = ModuleTag::module(p.symbol);
    if (!analysis.module_nonempty(tag)) continue;
    report.codeterministic = false;
    Symbol lo = std::min(p.left, p.right);
    Symbol hi = std::max(p.left, p.right);
    report.conflict = {lo, hi};
    report.witness = analysis.witness(tag);
    return report;
  }
  return report;
}

CompleteReport is_complete(const Vra& v) {
  CompleteReport report;
  report.complete = true;

  const auto labels = v.fa_labels();
  for (const auto& tag : v.module_tags()) {
    const auto& fa = v.automaton(tag);
    std::set<std::pair<StateId, Symbol>> seen;
    for (const auto& t : fa.transitions) seen.insert({t.src, t.label});
    for (StateId q : fa.states) {
      for (Symbol a : labels) {
        if (!seen.count({q, a})) {
          report.complete = false;
          report.diagnostics.push_back(
              {"incomplete-fa", "module " + tag.display() + ": state " +
                                    fa.name_of(q) + " has no transition on " +
                                    a.name()});
        }
      }
    }
  }
  if (!report.complete) return report;

  // Covering condition, one universality question per call/return pair.
  for (Symbol c : v.alphabet.call) {
    for (Symbol r : v.alphabet.ret) {
      auto group = v.procs.group(c, r);
      if (group.empty()) {
        report.complete = false;
        report.failing_pair = {c, r};
        report.missing_word = Word{};  // ε is well matched and uncovered
        report.diagnostics.push_back(
            {"uncovered-pair",
             "no module is linked to <" + c.name() + "," + r.name() + ">"});
        return report;
      }
      FiniteAutomaton united;
      bool first = true;
      for (Symbol j : group) {
        united = first ? v.modules.at(j) : fa_union(united, v.modules.at(j));
        first = false;
      }
      Vra derived = make_vra(v.alphabet, v.procs, v.modules, united);
      DecisionReport universal = is_universal(derived);
      if (!universal.holds) {
        report.complete = false;
        report.failing_pair = {c, r};
        report.missing_word = universal.counterexample;
        report.diagnostics.push_back(
            {"uncovered-pair", "modules linked to <" + c.name() + "," + r.name() +
                                   "> do not cover all well-matched words"});
        return report;
      }
    }
  }
  return report;
}

namespace {

std::string subset_symbol_name(const std::vector<Symbol>& members, Symbol c, Symbol r,
                               bool qualify) {
  std::string name = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) name += ',';
    name += members[i].name();
  }
  name += '}';
  if (qualify) name += "@(" + c.name() + "," + r.name() + ")";
  return name;
}

}  // namespace

CodetCompleteResult codet_complete(const Vra& v, CodetTrim trim) {
  require_valid(v);

  const bool qualify = v.alphabet.call.size() * v.alphabet.ret.size() > 1;

  std::set<std::string> taken;
  for (Symbol s : v.alphabet.internal) taken.insert(s.name());
  for (Symbol s : v.alphabet.call) taken.insert(s.name());
  for (Symbol s : v.alphabet.ret) taken.insert(s.name());

  // Σ'_proc: the per-pair powerset, the empty subset included for every pair.
  CodetCompleteResult result;
  ProceduralAlphabet new_procs;
  std::map<Symbol, std::vector<Symbol>> expand;  // J -> subset symbols containing J
  struct Group {
    Symbol c, r;
    std::vector<Symbol> sources;                 // Σ_proc^⟨c,r⟩ sorted
    std::vector<ProcSubsetSymbol> subsets;       // all 2^k of them
  };
  std::vector<Group> groups;
  for (Symbol c : v.alphabet.call) {
    for (Symbol r : v.alphabet.ret) {
      Group g;
      g.c = c;
      g.r = r;
      g.sources = v.procs.group(c, r);
      std::sort(g.sources.begin(), g.sources.end());
      const std::size_t k = g.sources.size();
      for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << k); ++mask) {
        ProcSubsetSymbol sub;
        sub.call = c;
        sub.ret = r;
        for (std::size_t i = 0; i < k; ++i) {
          if (mask & (static_cast<std::size_t>(1) << i)) sub.members.push_back(g.sources[i]);
        }
        std::string name = subset_symbol_name(sub.members, c, r, qualify);
        while (taken.count(name)) name += "'";
        taken.insert(name);
        sub.symbol = Symbol{name};
        new_procs.link[sub.symbol] = {c, r, sub.members, true};
        for (Symbol j : sub.members) expand[j].push_back(sub.symbol);
        g.subsets.push_back(sub);
        result.subset_symbols.push_back(std::move(sub));
      }
      groups.push_back(std::move(g));
    }
  }
  std::sort(result.subset_symbols.begin(), result.subset_symbols.end(),
            [](const ProcSubsetSymbol& a, const ProcSubsetSymbol& b) {
              return a.symbol < b.symbol;
            });

  std::vector<Symbol> new_labels = v.alphabet.internal;
  for (const auto& [sym, _] : new_procs.link) new_labels.push_back(sym);
  std::sort(new_labels.begin(), new_labels.end());

  const SubsetScope subset_scope =
      trim == CodetTrim::Off ? SubsetScope::Full : SubsetScope::Reachable;
  const ProductScope product_scope =
      trim == CodetTrim::Off ? ProductScope::Full : ProductScope::Reachable;

  // A'^J: relabeled then determinized-completed copies of every source FA.
  auto primed = [&](const FiniteAutomaton& fa) {
    return determinize_complete(relabel_to_supersets(fa, new_labels, expand),
                                new_labels, subset_scope);
  };
  std::map<Symbol, FiniteAutomaton> primed_modules;
  for (const auto& [sym, fa] : v.modules) primed_modules[sym] = primed(fa);
  FiniteAutomaton start = primed(v.start);

  // B^𝒥: final-selected product over the ⟨c,r⟩ group of A'^J components.
  std::map<Symbol, FiniteAutomaton> modules;
  for (const auto& g : groups) {
    std::vector<FiniteAutomaton> components;
    components.reserve(g.sources.size());
    for (Symbol j : g.sources) components.push_back(primed_modules.at(j));
    for (const auto& sub : g.subsets) {
      std::vector<FinalSelector> selectors;
      selectors.reserve(g.sources.size());
      for (Symbol j : g.sources) {
        bool in = std::binary_search(sub.members.begin(), sub.members.end(), j);
        selectors.push_back(in ? FinalSelector::Finals : FinalSelector::CoFinals);
      }
      modules[sub.symbol] = product_select(components, selectors, new_labels, product_scope);
    }
  }

  result.vra = make_vra(v.alphabet, std::move(new_procs), std::move(modules),
                        std::move(start));
  return result;
}

bool has_regular_partition_form(const Vra& v) {
  const auto labels = v.fa_labels();
  if (!v.start.deterministic() || !v.start.complete(labels)) return false;
  return has_partition_modules(v);
}

bool has_partition_modules(const Vra& v) {
  const auto labels = v.fa_labels();
  for (const auto& [sym, fa] : v.modules) {
    if (!fa.deterministic() || !fa.complete(labels)) return false;
  }

  for (Symbol c : v.alphabet.call) {
    for (Symbol r : v.alphabet.ret) {
      auto group = v.procs.group(c, r);
      if (group.empty()) return false;
      // Walk the synchronized product; the group partitions (Σ_int ∪ Σ_proc)*
      // iff every reachable tuple has exactly one accepting component.
      std::vector<const FiniteAutomaton*> fas;
      fas.reserve(group.size());
      for (Symbol j : group) fas.push_back(&v.modules.at(j));
      std::vector<std::map<std::pair<StateId, Symbol>, StateId>> step(fas.size());
      for (std::size_t i = 0; i < fas.size(); ++i) {
        for (const auto& t : fas[i]->transitions) step[i][{t.src, t.label}] = t.dst;
      }
      using Tuple = std::vector<StateId>;
      Tuple start;
      for (const auto* fa : fas) start.push_back(fa->initials.front());
      std::set<Tuple> seen{start};
      std::deque<Tuple> todo{start};
      while (!todo.empty()) {
        Tuple tup = todo.front();
        todo.pop_front();
        int finals = 0;
        for (std::size_t i = 0; i < fas.size(); ++i) {
          if (fas[i]->is_final(tup[i])) ++finals;
        }
        if (finals != 1) return false;
        for (Symbol a : labels) {
          Tuple next;
          next.reserve(tup.size());
          for (std::size_t i = 0; i < fas.size(); ++i) next.push_back(step[i].at({tup[i], a}));
          if (seen.insert(next).second) todo.push_back(next);
        }
      }
    }
  }
  return true;
}

}  // namespace vra
