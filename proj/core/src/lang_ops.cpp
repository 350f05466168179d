#include "vra/lang_ops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "vra/codet.hpp"
#include "vra/errors.hpp"
#include "vra/fa_ops.hpp"

namespace vra {

namespace {

void require_same_alphabet(const Vra& a, const Vra& b) {
  if (!(a.alphabet == b.alphabet)) {
    throw AlphabetMismatchError("operands use different pushdown alphabets");
  }
}

struct Renamed {
  Vra vra;
  std::map<Symbol, Symbol> to_original;  // renamed symbol -> operand's symbol
};

/// Renames b's procedural symbols away from a's (and away from the pushdown
/// alphabet). States are renumbered later by make_vra, so only symbol
/// collisions matter here.
Renamed rename_apart(const Vra& a, const Vra& b) {
  std::set<std::string> taken;
  for (const auto& [sym, _] : a.procs.link) taken.insert(sym.name());
  for (Symbol s : a.alphabet.internal) taken.insert(s.name());
  for (Symbol s : a.alphabet.call) taken.insert(s.name());
  for (Symbol s : a.alphabet.ret) taken.insert(s.name());

  std::map<Symbol, Symbol> remap;
  Renamed out;
  bool any = false;
  for (const auto& [sym, _] : b.procs.link) {
    std::string name = sym.name();
    while (taken.count(name)) {
      name += "'";
      any = true;
    }
    taken.insert(name);
    remap[sym] = Symbol{name};
    out.to_original[Symbol{name}] = sym;
  }
  if (!any) {
    out.vra = b;
    return out;
  }

  out.vra.alphabet = b.alphabet;
  for (const auto& [sym, lk] : b.procs.link) out.vra.procs.link[remap.at(sym)] = lk;
  auto relabel = [&](const FiniteAutomaton& fa) {
    FiniteAutomaton copy = fa;
    for (auto& t : copy.transitions) {
      auto it = remap.find(t.label);
      if (it != remap.end()) t.label = it->second;
    }
    copy.normalize();
    return copy;
  };
  out.vra.start = relabel(b.start);
  for (const auto& [sym, fa] : b.modules) out.vra.modules[remap.at(sym)] = relabel(fa);
  return out;
}

std::map<Symbol, FiniteAutomaton> merged_modules(const Vra& a, const Vra& b) {
  std::map<Symbol, FiniteAutomaton> modules = a.modules;
  for (const auto& [sym, fa] : b.modules) modules[sym] = fa;
  return modules;
}

ProceduralAlphabet merged_procs(const Vra& a, const Vra& b) {
  ProceduralAlphabet procs = a.procs;
  for (const auto& [sym, lk] : b.procs.link) procs.link[sym] = lk;
  return procs;
}

enum class PairFinals { Both, Either };

/// Synchronized product of two module FAs with procedural transitions paired
/// through `combine`; used for intersection modules and for the *_cc starts.
FiniteAutomaton pair_product(const FiniteAutomaton& fa1, const FiniteAutomaton& fa2,
                             const Vra& a, const Vra& b,
                             const std::map<std::pair<Symbol, Symbol>, Symbol>& combine,
                             PairFinals mode) {
  FiniteAutomaton out;
  using Pair = std::pair<StateId, StateId>;
  std::map<Pair, StateId> index;
  std::vector<Pair> order;
  auto intern = [&](Pair p) {
    auto [it, fresh] = index.emplace(p, static_cast<StateId>(order.size()));
    if (fresh) order.push_back(p);
    return std::make_pair(it->second, fresh);
  };

  auto adjacency = [](const FiniteAutomaton& fa) {
    std::map<StateId, std::vector<std::pair<Symbol, StateId>>> adj;
    for (const auto& t : fa.transitions) adj[t.src].push_back({t.label, t.dst});
    return adj;
  };
  auto adj1 = adjacency(fa1);
  auto adj2 = adjacency(fa2);
  static const std::vector<std::pair<Symbol, StateId>> kNone;
  auto edges_of = [&](const std::map<StateId, std::vector<std::pair<Symbol, StateId>>>& adj,
                      StateId q) -> const std::vector<std::pair<Symbol, StateId>>& {
    auto it = adj.find(q);
    return it == adj.end() ? kNone : it->second;
  };

  std::deque<Pair> todo;
  for (StateId i1 : fa1.initials) {
    for (StateId i2 : fa2.initials) {
      auto [id, fresh] = intern({i1, i2});
      (void)id;
      if (fresh) todo.push_back({i1, i2});
    }
  }
  while (!todo.empty()) {
    auto [q1, q2] = todo.front();
    todo.pop_front();
    StateId src = index.at({q1, q2});
    for (const auto& [l1, d1] : edges_of(adj1, q1)) {
      bool internal = a.alphabet.is_internal(l1);
      for (const auto& [l2, d2] : edges_of(adj2, q2)) {
        Symbol label;
        if (internal) {
          if (!(l2 == l1)) continue;
          label = l1;
        } else {
          if (b.alphabet.is_internal(l2)) continue;
          auto it = combine.find({l1, l2});
          if (it == combine.end()) continue;  // incompatible pair: not materialized
          label = it->second;
        }
        auto [dst, fresh] = intern({d1, d2});
        if (fresh) todo.push_back({d1, d2});
        out.transitions.push_back({src, label, dst});
      }
    }
  }

  for (const auto& [pair, id] : index) {
    out.states.push_back(id);
    out.names[id] = "(" + fa1.name_of(pair.first) + "," + fa2.name_of(pair.second) + ")";
    bool f1 = fa1.is_final(pair.first);
    bool f2 = fa2.is_final(pair.second);
    bool fin = mode == PairFinals::Both ? (f1 && f2) : (f1 || f2);
    if (fin) out.finals.push_back(id);
  }
  for (StateId i1 : fa1.initials) {
    for (StateId i2 : fa2.initials) out.initials.push_back(index.at({i1, i2}));
  }
  out.normalize();
  return out;
}

struct PairAlphabet {
  ProceduralAlphabet procs;
  std::map<std::pair<Symbol, Symbol>, Symbol> combine;
  std::vector<ProcPairSymbol> pairs;
};

/// Σ_proc = ⟨c,r⟩-compatible pairs of the operands' symbols.
PairAlphabet pair_alphabet(const Vra& a, const Vra& b) {
  PairAlphabet out;
  std::set<std::string> taken;
  for (Symbol s : a.alphabet.internal) taken.insert(s.name());
  for (Symbol s : a.alphabet.call) taken.insert(s.name());
  for (Symbol s : a.alphabet.ret) taken.insert(s.name());
  for (const auto& [j1, lk1] : a.procs.link) {
    for (const auto& [j2, lk2] : b.procs.link) {
      if (!(lk1.call == lk2.call) || !(lk1.ret == lk2.ret)) continue;
      std::string name = "(" + j1.name() + "," + j2.name() + ")";
      while (taken.count(name)) name += "'";
      taken.insert(name);
      Symbol sym{name};
      out.procs.link[sym] = {lk1.call, lk1.ret, {}, false};
      out.combine[{j1, j2}] = sym;
      out.pairs.push_back({j1, j2, lk1.call, lk1.ret, sym});
    }
  }
  return out;
}

IntersectResult intersect_impl(const Vra& a, const Vra& b_in,
                               const std::map<Symbol, Symbol>& right_names,
                               PairFinals start_mode) {
  PairAlphabet pa = pair_alphabet(a, b_in);

  std::map<Symbol, FiniteAutomaton> modules;
  for (const auto& p : pa.pairs) {
    modules[p.symbol] = pair_product(a.modules.at(p.left), b_in.modules.at(p.right),
                                     a, b_in, pa.combine, PairFinals::Both);
  }
  FiniteAutomaton start =
      pair_product(a.start, b_in.start, a, b_in, pa.combine, start_mode);

  IntersectResult out;
  out.vra = make_vra(a.alphabet, pa.procs, std::move(modules), std::move(start));
  out.pairs = std::move(pa.pairs);
  for (auto& p : out.pairs) {
    auto it = right_names.find(p.right);
    if (it != right_names.end()) p.right = it->second;
  }
  return out;
}

void require_partition_form(const Vra& v, const char* op) {
  if (!has_regular_partition_form(v)) {
    throw NotCodetCompleteError(std::string(op) +
                                " requires codeterministic complete operands "
                                "with complete DFA modules");
  }
}

}  // namespace

Vra vra_concat(const Vra& a, const Vra& b_in) {
  require_same_alphabet(a, b_in);
  Vra b = rename_apart(a, b_in).vra;
  return make_vra(a.alphabet, merged_procs(a, b), merged_modules(a, b),
                  fa_concat(a.start, b.start));
}

Vra vra_star(const Vra& a) {
  return make_vra(a.alphabet, a.procs, a.modules, fa_star(a.start));
}

Vra vra_union(const Vra& a, const Vra& b_in) {
  require_same_alphabet(a, b_in);
  Vra b = rename_apart(a, b_in).vra;
  return make_vra(a.alphabet, merged_procs(a, b), merged_modules(a, b),
                  fa_union(a.start, b.start));
}

IntersectResult vra_intersect_detailed(const Vra& a, const Vra& b_in) {
  require_same_alphabet(a, b_in);
  Renamed b = rename_apart(a, b_in);
  return intersect_impl(a, b.vra, b.to_original, PairFinals::Both);
}

Vra vra_intersect(const Vra& a, const Vra& b) {
  return vra_intersect_detailed(a, b).vra;
}

Vra vra_complement(const Vra& a) {
  // Partition-form modules make factor abstractions unique, so complementing
  // the start's regular language complements the recursive language; the
  // start is determinized first when it is not already a complete DFA. The
  // full normalization only runs when the modules themselves need it.
  if (has_partition_modules(a)) {
    auto labels = a.fa_labels();
    if (a.start.deterministic() && a.start.complete(labels)) {
      Vra out = a;
      out.start = fa_complement_dfa(a.start, labels);
      return out;
    }
    FiniteAutomaton start =
        fa_complement_dfa(determinize_complete(a.start, labels), labels);
    return make_vra(a.alphabet, a.procs, a.modules, std::move(start));
  }
  Vra normal = codet_complete(a, CodetTrim::On).vra;
  Vra out = normal;
  out.start = fa_complement_dfa(normal.start, normal.fa_labels());
  return out;
}

Vra vra_concat_cc(const Vra& a, const Vra& b_in) {
  require_same_alphabet(a, b_in);
  require_partition_form(a, "vra_concat_cc");
  require_partition_form(b_in, "vra_concat_cc");
  Vra b = rename_apart(a, b_in).vra;

  PairAlphabet pa = pair_alphabet(a, b);
  std::map<Symbol, FiniteAutomaton> modules;
  for (const auto& p : pa.pairs) {
    modules[p.symbol] = pair_product(a.modules.at(p.left), b.modules.at(p.right),
                                     a, b, pa.combine, PairFinals::Both);
  }

  // Rewrite both starts over the pair alphabet, concatenate, then determinize.
  std::vector<Symbol> labels = a.alphabet.internal;
  for (const auto& [sym, _] : pa.procs.link) labels.push_back(sym);
  std::sort(labels.begin(), labels.end());

  std::map<Symbol, std::vector<Symbol>> expand_left, expand_right;
  for (const auto& p : pa.pairs) {
    expand_left[p.left].push_back(p.symbol);
    expand_right[p.right].push_back(p.symbol);
  }
  FiniteAutomaton s1 = relabel_to_supersets(a.start, labels, expand_left);
  FiniteAutomaton s2 = relabel_to_supersets(b.start, labels, expand_right);
  FiniteAutomaton start = determinize_complete(fa_concat(s1, s2), labels);

  return make_vra(a.alphabet, pa.procs, std::move(modules), std::move(start));
}

Vra vra_star_cc(const Vra& a) {
  require_partition_form(a, "vra_star_cc");
  FiniteAutomaton start = determinize_complete(fa_star(a.start), a.fa_labels());
  return make_vra(a.alphabet, a.procs, a.modules, std::move(start));
}

Vra vra_union_cc(const Vra& a, const Vra& b_in) {
  require_same_alphabet(a, b_in);
  require_partition_form(a, "vra_union_cc");
  require_partition_form(b_in, "vra_union_cc");
  Renamed b = rename_apart(a, b_in);
  return intersect_impl(a, b.vra, b.to_original, PairFinals::Either).vra;
}

Vra vra_intersect_cc(const Vra& a, const Vra& b_in) {
  require_same_alphabet(a, b_in);
  require_partition_form(a, "vra_intersect_cc");
  require_partition_form(b_in, "vra_intersect_cc");
  Renamed b = rename_apart(a, b_in);
  return intersect_impl(a, b.vra, b.to_original, PairFinals::Both).vra;
}

}  // namespace vra
