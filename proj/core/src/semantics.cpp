#include "vra/semantics.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <unordered_map>

#include "vra/errors.hpp"

namespace vra {

std::vector<Configuration> step(const Vra& v, const Configuration& c, Symbol letter) {
  std::vector<Configuration> out;
  const auto push_front = [](const std::vector<StateId>& stack, StateId q) {
    std::vector<StateId> pushed;
    pushed.reserve(stack.size() + 1);
    pushed.push_back(q);
    pushed.insert(pushed.end(), stack.begin(), stack.end());
    return pushed;
  };
  const auto each_transition = [&](auto&& fn) {
    for (const auto& t : v.start.transitions) fn(t);
    for (const auto& [sym, fa] : v.modules) {
      for (const auto& t : fa.transitions) fn(t);
    }
  };

  if (v.alphabet.is_internal(letter)) {
    each_transition([&](const Transition& t) {
      if (t.src == c.state && t.label == letter) out.push_back({t.dst, c.stack});
    });
  } else if (v.alphabet.is_call(letter)) {
    // Jump to an initial of the called module, pushing the procedural
    // transition's target; the same symbol J governs all three conditions.
    each_transition([&](const Transition& t) {
      if (t.src != c.state) return;
      auto lk = v.procs.link.find(t.label);
      if (lk == v.procs.link.end() || lk->second.call != letter) return;
      for (StateId qi : v.modules.at(t.label).initials) {
        out.push_back({qi, push_front(c.stack, t.dst)});
      }
    });
  } else if (v.alphabet.is_ret(letter)) {
    if (!c.stack.empty()) {
      for (const auto& [sym, lk] : v.procs.link) {
        if (lk.ret != letter) continue;
        if (v.modules.at(sym).is_final(c.state)) {
          std::vector<StateId> rest(c.stack.begin() + 1, c.stack.end());
          out.push_back({c.stack.front(), std::move(rest)});
          break;  // popping is independent of which module matched
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

/// Relation on the compiled state indexing; rows are sorted successor lists.
struct Relation {
  std::vector<std::vector<int>> rows;

  static Relation identity(int n) {
    Relation r;
    r.rows.resize(n);
    for (int i = 0; i < n; ++i) r.rows[i] = {i};
    return r;
  }
  static Relation empty(int n) {
    Relation r;
    r.rows.resize(n);
    return r;
  }
  bool contains(int a, int b) const {
    const auto& row = rows[a];
    return std::binary_search(row.begin(), row.end(), b);
  }
  Relation then(const Relation& next) const {
    Relation out = empty(static_cast<int>(rows.size()));
    std::vector<int> buf;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      buf.clear();
      for (int mid : rows[i]) {
        const auto& row = next.rows[mid];
        buf.insert(buf.end(), row.begin(), row.end());
      }
      std::sort(buf.begin(), buf.end());
      buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
      out.rows[i] = buf;
    }
    return out;
  }
};

}  // namespace

struct MembershipEvaluator::Impl {
  const Vra* v = nullptr;
  int n = 0;
  std::vector<StateId> states;  // sorted
  std::unordered_map<StateId, int> index;
  std::vector<int> module_of;          // state index -> tag index
  std::vector<ModuleTag> tags;         // start first
  std::map<Symbol, Relation> internal_rel;
  // Procedural edges anywhere in the VRA, per symbol.
  std::map<Symbol, std::vector<std::pair<int, int>>> proc_edges;
  std::map<Symbol, std::pair<std::vector<int>, std::vector<int>>> module_if;
  std::pair<std::vector<int>, std::vector<int>> start_if;
  // Groups Σ_proc^⟨c,r⟩ keyed by the call symbol, each entry (ret, symbols).
  std::map<Symbol, std::vector<std::pair<Symbol, std::vector<Symbol>>>> groups_by_call;

  explicit Impl(const Vra& vra) : v(&vra) {
    for (const auto& tag : vra.module_tags()) {
      for (StateId q : vra.automaton(tag).states) states.push_back(q);
    }
    std::sort(states.begin(), states.end());
    n = static_cast<int>(states.size());
    for (int i = 0; i < n; ++i) index[states[i]] = i;

    tags = vra.module_tags();
    module_of.assign(n, -1);
    for (std::size_t t = 0; t < tags.size(); ++t) {
      const auto& fa = vra.automaton(tags[t]);
      for (StateId q : fa.states) module_of[index.at(q)] = static_cast<int>(t);
    }

    for (Symbol a : vra.alphabet.internal) internal_rel.emplace(a, Relation::empty(n));
    for (const auto& tag : tags) {
      const auto& fa = vra.automaton(tag);
      for (const auto& t : fa.transitions) {
        if (vra.alphabet.is_internal(t.label)) {
          internal_rel.at(t.label).rows[index.at(t.src)].push_back(index.at(t.dst));
        } else {
          proc_edges[t.label].push_back({index.at(t.src), index.at(t.dst)});
        }
      }
    }
    for (auto& [_, rel] : internal_rel) {
      for (auto& row : rel.rows) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
      }
    }

    auto gather = [&](const FiniteAutomaton& fa) {
      std::pair<std::vector<int>, std::vector<int>> out;
      for (StateId q : fa.initials) out.first.push_back(index.at(q));
      for (StateId q : fa.finals) out.second.push_back(index.at(q));
      return out;
    };
    start_if = gather(vra.start);
    for (const auto& [sym, fa] : vra.modules) module_if[sym] = gather(fa);

    std::map<std::pair<Symbol, Symbol>, std::vector<Symbol>> groups;
    for (const auto& [sym, lk] : vra.procs.link) groups[{lk.call, lk.ret}].push_back(sym);
    for (auto& [pair, syms] : groups) {
      std::sort(syms.begin(), syms.end());
      groups_by_call[pair.first].push_back({pair.second, syms});
    }
  }

  bool module_accepts(Symbol sym, const Relation& inner) const {
    const auto& [ini, fin] = module_if.at(sym);
    for (int i : ini) {
      for (int f : fin) {
        if (inner.contains(i, f)) return true;
      }
    }
    return false;
  }

  Relation bracket(Symbol call, Symbol ret, const Relation& inner) const {
    Relation out = Relation::empty(n);
    auto it = groups_by_call.find(call);
    if (it == groups_by_call.end()) return out;
    for (const auto& [r, syms] : it->second) {
      if (!(r == ret)) continue;
      for (Symbol sym : syms) {
        auto edges = proc_edges.find(sym);
        if (edges == proc_edges.end()) continue;
        if (!module_accepts(sym, inner)) continue;
        for (auto [src, dst] : edges->second) out.rows[src].push_back(dst);
      }
    }
    for (auto& row : out.rows) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return out;
  }

  /// One left-to-right pass over a known-well-matched span.
  Relation rel_scan(const std::vector<Symbol>& letters, std::size_t lo,
                    std::size_t hi) const {
    Relation cur = Relation::identity(n);
    std::vector<std::pair<Relation, Symbol>> stack;
    for (std::size_t i = lo; i < hi; ++i) {
      Symbol s = letters[i];
      if (v->alphabet.is_internal(s)) {
        cur = cur.then(internal_rel.at(s));
      } else if (v->alphabet.is_call(s)) {
        stack.emplace_back(std::move(cur), s);
        cur = Relation::identity(n);
      } else {
        auto [outer, c] = std::move(stack.back());
        stack.pop_back();
        cur = outer.then(bracket(c, s, cur));
      }
    }
    assert(stack.empty());
    return cur;
  }

  using SpanKey = std::uint64_t;
  static SpanKey key(std::size_t lo, std::size_t hi) {
    return (static_cast<std::uint64_t>(lo) << 32) | hi;
  }

  const Relation& rel_memo(const std::vector<Symbol>& letters, std::size_t lo,
                           std::size_t hi,
                           std::map<SpanKey, Relation>& memo) const {
    auto it = memo.find(key(lo, hi));
    if (it != memo.end()) return it->second;
    return memo.emplace(key(lo, hi), rel_scan(letters, lo, hi)).first->second;
  }

  /// Matching return position for the call at position i (well-matched span).
  static std::size_t match_of(const std::vector<Symbol>& letters,
                              const PushdownAlphabet& a, std::size_t i) {
    int depth = 0;
    for (std::size_t j = i; j < letters.size(); ++j) {
      if (a.is_call(letters[j])) ++depth;
      else if (a.is_ret(letters[j])) {
        --depth;
        if (depth == 0) return j;
      }
    }
    return letters.size();
  }

  void build_run(const std::vector<Symbol>& letters, std::size_t lo, std::size_t hi,
                 int from, int to, std::vector<StateId>& stack_word,
                 std::map<SpanKey, Relation>& memo,
                 std::vector<RunStep>& steps) const {
    if (lo == hi) return;
    Symbol s = letters[lo];
    Configuration here{states[from], stack_word};
    if (v->alphabet.is_internal(s)) {
      const Relation& rest = rel_memo(letters, lo + 1, hi, memo);
      for (int mid : internal_rel.at(s).rows[from]) {
        if (!rest.contains(mid, to)) continue;
        steps.push_back({here, s, {states[mid], stack_word}});
        build_run(letters, lo + 1, hi, mid, to, stack_word, memo, steps);
        return;
      }
      throw Error("witness reconstruction lost an internal step");
    } else {
      std::size_t k = match_of(letters, v->alphabet, lo);
      Symbol r = letters[k];
      const Relation& inner = rel_memo(letters, lo + 1, k, memo);
      const Relation& rest = rel_memo(letters, k + 1, hi, memo);
      auto git = groups_by_call.find(s);
      if (git == groups_by_call.end()) {
        throw Error("witness reconstruction found no group for a call letter");
      }
      for (const auto& [ret, syms] : git->second) {
        if (!(ret == r)) continue;
        for (Symbol sym : syms) {
          auto edges = proc_edges.find(sym);
          if (edges == proc_edges.end()) continue;
          for (auto [src, mid] : edges->second) {
            if (src != from || !rest.contains(mid, to)) continue;
            const auto& [ini, fin] = module_if.at(sym);
            for (int i0 : ini) {
              for (int f0 : fin) {
                if (!inner.contains(i0, f0)) continue;
                std::vector<StateId> pushed = stack_word;
                pushed.insert(pushed.begin(), states[mid]);
                steps.push_back({here, s, {states[i0], pushed}});
                build_run(letters, lo + 1, k, i0, f0, pushed, memo, steps);
                steps.push_back({{states[f0], pushed}, r, {states[mid], stack_word}});
                build_run(letters, k + 1, hi, mid, to, stack_word, memo, steps);
                return;
              }
            }
          }
        }
      }
      throw Error("witness reconstruction lost a bracket step");
    }
  }
};

MembershipEvaluator::MembershipEvaluator(const Vra& v)
    : impl_(std::make_unique<Impl>(v)) {}
MembershipEvaluator::~MembershipEvaluator() = default;
MembershipEvaluator::MembershipEvaluator(MembershipEvaluator&&) noexcept = default;
MembershipEvaluator& MembershipEvaluator::operator=(MembershipEvaluator&&) noexcept = default;

MembershipReport MembershipEvaluator::member(const Word& w, bool want_witness) const {
  auto info = classify(w, impl_->v->alphabet);  // throws UnknownSymbolError
  if (!info.is_well_matched) {
    return {false, RejectReason::NotWellMatched, std::nullopt};
  }
  Relation rel = impl_->rel_scan(w.letters, 0, w.letters.size());
  const auto& [ini, fin] = impl_->start_if;
  for (int i : ini) {
    for (int f : fin) {
      if (!rel.contains(i, f)) continue;
      MembershipReport report{true, RejectReason::None, std::nullopt};
      if (want_witness) {
        std::map<Impl::SpanKey, Relation> memo;
        memo.emplace(Impl::key(0, w.letters.size()), rel);
        std::vector<RunStep> steps;
        std::vector<StateId> stack_word;
        impl_->build_run(w.letters, 0, w.letters.size(), i, f, stack_word, memo, steps);
        report.witness = RecursiveRun{std::move(steps)};
      }
      return report;
    }
  }
  return {false, RejectReason::NotAccepted, std::nullopt};
}

std::map<ModuleTag, std::vector<StatePair>> MembershipEvaluator::module_relation(
    const Word& w) const {
  auto info = classify(w, impl_->v->alphabet);
  if (!info.is_well_matched) {
    throw NotWellMatchedError("module_relation requires a well-matched word");
  }
  Relation rel = impl_->rel_scan(w.letters, 0, w.letters.size());
  std::map<ModuleTag, std::vector<StatePair>> out;
  for (const auto& tag : impl_->tags) out[tag];
  for (int a = 0; a < impl_->n; ++a) {
    for (int b : rel.rows[a]) {
      out[impl_->tags[impl_->module_of[a]]].push_back(
          {impl_->states[a], impl_->states[b]});
    }
  }
  return out;
}

bool MembershipEvaluator::accepts_from(const ModuleTag& tag, const Word& w) const {
  auto info = classify(w, impl_->v->alphabet);
  if (!info.is_well_matched) return false;
  Relation rel = impl_->rel_scan(w.letters, 0, w.letters.size());
  const auto& [ini, fin] = tag.is_start() ? impl_->start_if : impl_->module_if.at(*tag.proc);
  for (int i : ini) {
    for (int f : fin) {
      if (rel.contains(i, f)) return true;
    }
  }
  return false;
}

MembershipReport vra_member(const Vra& v, const Word& w, bool want_witness) {
  return MembershipEvaluator(v).member(w, want_witness);
}

std::map<ModuleTag, std::vector<StatePair>> module_relation(const Vra& v, const Word& w) {
  return MembershipEvaluator(v).module_relation(w);
}

}  // namespace vra
