#include "vra/vpa.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "vra/errors.hpp"
#include "vra/model.hpp"

namespace vra {

namespace {

template <typename T>
void sort_unique(std::vector<T>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

const std::string& Vpa::name_of(StateId q) const {
  static thread_local std::string fallback;
  auto it = names.find(q);
  if (it != names.end()) return it->second;
  fallback = "q" + std::to_string(q);
  return fallback;
}

void Vpa::normalize() {
  sort_unique(states);
  sort_unique(initials);
  sort_unique(finals);
  sort_unique(internal_transitions);
  sort_unique(call_transitions);
  sort_unique(return_transitions);
  sort_unique(stack_alphabet);
}

std::vector<Diagnostic> validate_vpa(const Vpa& p) {
  std::vector<Diagnostic> out;
  auto has_state = [&](StateId q) {
    return std::binary_search(p.states.begin(), p.states.end(), q);
  };
  auto has_gamma = [&](Symbol g) {
    return std::find(p.stack_alphabet.begin(), p.stack_alphabet.end(), g) !=
           p.stack_alphabet.end();
  };
  for (StateId q : p.initials) {
    if (!has_state(q)) out.push_back({"undeclared-state", "initial state not declared"});
  }
  for (StateId q : p.finals) {
    if (!has_state(q)) out.push_back({"undeclared-state", "final state not declared"});
  }
  for (const auto& t : p.internal_transitions) {
    if (!has_state(t.src) || !has_state(t.dst))
      out.push_back({"undeclared-state", "internal transition uses undeclared state"});
    if (!p.alphabet.is_internal(t.label))
      out.push_back({"bad-label", "internal transition label " + t.label.name() +
                                      " is not an internal symbol"});
  }
  for (const auto& t : p.call_transitions) {
    if (!has_state(t.src) || !has_state(t.dst))
      out.push_back({"undeclared-state", "call transition uses undeclared state"});
    if (!p.alphabet.is_call(t.letter))
      out.push_back({"bad-label", "call transition letter " + t.letter.name() +
                                      " is not a call symbol"});
    if (!has_gamma(t.stack_sym))
      out.push_back({"bad-stack-symbol", "call transition pushes undeclared " +
                                             t.stack_sym.name()});
  }
  for (const auto& t : p.return_transitions) {
    if (!has_state(t.src) || !has_state(t.dst))
      out.push_back({"undeclared-state", "return transition uses undeclared state"});
    if (!p.alphabet.is_ret(t.letter))
      out.push_back({"bad-label", "return transition letter " + t.letter.name() +
                                      " is not a return symbol"});
    if (!has_gamma(t.stack_sym))
      out.push_back({"bad-stack-symbol", "return transition pops undeclared " +
                                             t.stack_sym.name()});
  }
  return out;
}

bool vpa_member(const Vpa& p, const Word& w) {
  for (Symbol s : w.letters) {
    if (!p.alphabet.contains(s)) throw UnknownSymbolError(s.name());
  }

  // Stacked-run search; stack[0] is the top.
  using Config = std::pair<StateId, std::vector<Symbol>>;
  std::set<Config> frontier;
  for (StateId q : p.initials) frontier.insert({q, {}});

  for (Symbol a : w.letters) {
    std::set<Config> next;
    if (p.alphabet.is_internal(a)) {
      for (const auto& [q, stack] : frontier) {
        for (const auto& t : p.internal_transitions) {
          if (t.src == q && t.label == a) next.insert({t.dst, stack});
        }
      }
    } else if (p.alphabet.is_call(a)) {
      for (const auto& [q, stack] : frontier) {
        for (const auto& t : p.call_transitions) {
          if (t.src != q || !(t.letter == a)) continue;
          auto pushed = stack;
          pushed.insert(pushed.begin(), t.stack_sym);
          next.insert({t.dst, std::move(pushed)});
        }
      }
    } else {
      for (const auto& [q, stack] : frontier) {
        if (stack.empty()) continue;
        for (const auto& t : p.return_transitions) {
          if (t.src != q || !(t.letter == a) || !(t.stack_sym == stack.front())) continue;
          next.insert({t.dst, std::vector<Symbol>(stack.begin() + 1, stack.end())});
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) return false;
  }

  for (const auto& [q, stack] : frontier) {
    if (stack.empty() && std::binary_search(p.finals.begin(), p.finals.end(), q)) {
      return true;
    }
  }
  return false;
}

Vpa vra_to_vpa(const Vra& v) {
  require_valid(v);

  Vpa out;
  out.alphabet = v.alphabet;

  // Γ = S_A: one stack symbol per state. Display names may repeat across
  // modules, so duplicated ones get an id suffix to keep Γ faithful.
  std::map<std::string, int> name_uses;
  for (const auto& tag : v.module_tags()) {
    const auto& fa = v.automaton(tag);
    for (StateId q : fa.states) ++name_uses[fa.name_of(q)];
  }
  std::map<StateId, Symbol> gamma;
  for (const auto& tag : v.module_tags()) {
    const auto& fa = v.automaton(tag);
    for (StateId q : fa.states) {
      out.states.push_back(q);
      out.names[q] = fa.name_of(q);
      std::string gname = fa.name_of(q);
      if (name_uses[gname] > 1) gname += "#" + std::to_string(q);
      Symbol g{gname};
      gamma[q] = g;
      out.stack_alphabet.push_back(g);
    }
  }
  out.initials = v.start.initials;
  out.finals = v.start.finals;

  for (const auto& tag : v.module_tags()) {
    const auto& fa = v.automaton(tag);
    for (const auto& t : fa.transitions) {
      if (v.alphabet.is_internal(t.label)) {
        out.internal_transitions.push_back(t);
      } else {
        const auto& lk = v.procs.link.at(t.label);
        for (StateId qi : v.modules.at(t.label).initials) {
          out.call_transitions.push_back({t.src, lk.call, qi, gamma.at(t.dst)});
        }
      }
    }
  }
  for (const auto& [sym, lk] : v.procs.link) {
    for (StateId qf : v.modules.at(sym).finals) {
      for (const auto& [q, g] : gamma) {
        out.return_transitions.push_back({qf, lk.ret, g, q});
      }
    }
  }
  out.normalize();
  return out;
}

Vra vpa_to_vra(const Vpa& p, bool trim_unreachable) {
  struct Quad {
    StateId entry, exit;
    Symbol call, ret;
    auto key() const { return std::make_tuple(entry, exit, call, ret); }
    bool operator<(const Quad& o) const { return key() < o.key(); }
    bool operator==(const Quad& o) const { return key() == o.key(); }
  };

  // Procedural symbols ⟨q,p,c,r⟩ named from state/letter displays.
  auto quad_name = [&](const Quad& k) {
    return "<" + p.name_of(k.entry) + "," + p.name_of(k.exit) + "," +
           k.call.name() + "," + k.ret.name() + ">";
  };

  std::vector<Quad> quads;
  for (StateId q : p.states) {
    for (StateId q2 : p.states) {
      for (Symbol c : p.alphabet.call) {
        for (Symbol r : p.alphabet.ret) quads.push_back({q, q2, c, r});
      }
    }
  }

  // The shared transition skeleton every module copies: internal transitions
  // plus one procedural edge per call/return pair agreeing on the stack symbol.
  struct ProcEdge {
    StateId src, dst;
    Quad quad;
  };
  std::vector<ProcEdge> proc_edges;
  for (const auto& ct : p.call_transitions) {
    for (const auto& rt : p.return_transitions) {
      if (!(ct.stack_sym == rt.stack_sym)) continue;
      proc_edges.push_back({ct.src, rt.dst, {ct.dst, rt.src, ct.letter, rt.letter}});
    }
  }

  // Every module copies the same edge set, so the modules referenced from the
  // start (transitively) are exactly those appearing on some edge.
  std::set<Quad> used;
  if (trim_unreachable) {
    for (const auto& e : proc_edges) used.insert(e.quad);
  }

  Vra out;
  out.alphabet = p.alphabet;

  StateId next = 0;
  auto instantiate = [&](const std::string& prefix, StateId entry, StateId exit,
                         bool is_start) {
    FiniteAutomaton fa;
    std::map<StateId, StateId> remap;
    for (StateId q : p.states) {
      StateId fresh = next++;
      remap[q] = fresh;
      fa.states.push_back(fresh);
      fa.names[fresh] = prefix + p.name_of(q);
    }
    for (const auto& t : p.internal_transitions) {
      fa.transitions.push_back({remap.at(t.src), t.label, remap.at(t.dst)});
    }
    for (const auto& e : proc_edges) {
      if (trim_unreachable && !used.count(e.quad)) continue;
      fa.transitions.push_back({remap.at(e.src), Symbol{quad_name(e.quad)}, remap.at(e.dst)});
    }
    if (is_start) {
      for (StateId q : p.initials) fa.initials.push_back(remap.at(q));
      for (StateId q : p.finals) fa.finals.push_back(remap.at(q));
    } else {
      fa.initials.push_back(remap.at(entry));
      fa.finals.push_back(remap.at(exit));
    }
    fa.normalize();
    return fa;
  };

  out.start = instantiate("s.", -1, -1, true);
  for (const auto& k : quads) {
    if (trim_unreachable && !used.count(k)) continue;
    Symbol sym{quad_name(k)};
    out.procs.link[sym] = {k.call, k.ret, {}, false};
    out.modules[sym] = instantiate(quad_name(k) + ".", k.entry, k.exit, false);
  }
  return out;
}

}  // namespace vra
