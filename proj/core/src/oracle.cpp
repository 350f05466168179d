#include "vra/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "vra/errors.hpp"
#include "vra/semantics.hpp"

namespace vra::oracle {

namespace {

/// All well-matched words of each exact length, via the first-return
/// decomposition (first letter internal, or a bracket factor followed by a
/// remainder), which generates every word exactly once.
std::vector<std::vector<Word>> words_by_length(const PushdownAlphabet& a, int max_len) {
  std::vector<std::vector<Word>> by_len(static_cast<std::size_t>(max_len) + 1);
  by_len[0].push_back(Word{});
  for (int n = 1; n <= max_len; ++n) {
    auto& bucket = by_len[static_cast<std::size_t>(n)];
    for (Symbol s : a.internal) {
      for (const Word& rest : by_len[static_cast<std::size_t>(n - 1)]) {
        Word w;
        w.letters.reserve(static_cast<std::size_t>(n));
        w.letters.push_back(s);
        w.letters.insert(w.letters.end(), rest.letters.begin(), rest.letters.end());
        bucket.push_back(std::move(w));
      }
    }
    for (Symbol c : a.call) {
      for (Symbol r : a.ret) {
        for (int k = 0; k <= n - 2; ++k) {
          for (const Word& inner : by_len[static_cast<std::size_t>(k)]) {
            for (const Word& rest : by_len[static_cast<std::size_t>(n - 2 - k)]) {
              Word w;
              w.letters.reserve(static_cast<std::size_t>(n));
              w.letters.push_back(c);
              w.letters.insert(w.letters.end(), inner.letters.begin(), inner.letters.end());
              w.letters.push_back(r);
              w.letters.insert(w.letters.end(), rest.letters.begin(), rest.letters.end());
              bucket.push_back(std::move(w));
            }
          }
        }
      }
    }
    std::sort(bucket.begin(), bucket.end());
  }
  return by_len;
}

}  // namespace

void enumerate_wm(const EnumerationBudget& budget,
                  const std::function<void(const Word&)>& yield) {
  if (budget.max_len < 0) return;
  auto by_len = words_by_length(budget.alphabet, budget.max_len);
  std::size_t emitted = 0;
  for (const auto& bucket : by_len) {
    for (const Word& w : bucket) {
      if (budget.max_words && emitted >= *budget.max_words) {
        throw BudgetExceededError("enumeration exceeds max_words cap");
      }
      ++emitted;
      yield(w);
    }
  }
}

std::vector<Word> enumerate_wm(const EnumerationBudget& budget) {
  std::vector<Word> out;
  enumerate_wm(budget, [&](const Word& w) { out.push_back(w); });
  return out;
}

std::vector<std::uint64_t> wm_counts_by_length(const PushdownAlphabet& a, int max_len) {
  const std::uint64_t ni = a.internal.size();
  const std::uint64_t nc = a.call.size();
  const std::uint64_t nr = a.ret.size();
  // Lattice paths over (position, open depth).
  std::vector<std::vector<std::uint64_t>> g(
      static_cast<std::size_t>(max_len) + 1,
      std::vector<std::uint64_t>(static_cast<std::size_t>(max_len) + 2, 0));
  g[0][0] = 1;
  for (int i = 0; i < max_len; ++i) {
    for (int d = 0; d <= i; ++d) {
      std::uint64_t here = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
      if (!here) continue;
      g[i + 1][static_cast<std::size_t>(d)] += ni * here;
      g[i + 1][static_cast<std::size_t>(d) + 1] += nc * here;
      if (d > 0) g[i + 1][static_cast<std::size_t>(d) - 1] += nr * here;
    }
  }
  std::vector<std::uint64_t> counts;
  counts.reserve(static_cast<std::size_t>(max_len) + 1);
  for (int n = 0; n <= max_len; ++n) counts.push_back(g[static_cast<std::size_t>(n)][0]);
  return counts;
}

bool brute_force_member(const Vra& v, const Word& w, int stack_bound) {
  std::vector<Configuration> frontier;
  for (StateId q : v.start.initials) frontier.push_back({q, {}});

  for (Symbol letter : w.letters) {
    std::vector<Configuration> next;
    for (const auto& c : frontier) {
      for (auto& succ : step(v, c, letter)) {
        if (static_cast<int>(succ.stack.size()) <= stack_bound) {
          next.push_back(std::move(succ));
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
    if (frontier.empty()) return false;
  }
  for (const auto& c : frontier) {
    if (c.stack.empty() && v.start.is_final(c.state)) return true;
  }
  return false;
}

namespace {

struct Acceptor {
  AcceptorRef ref;
  std::optional<MembershipEvaluator> eval;

  explicit Acceptor(AcceptorRef r) : ref(r) {
    if (auto* v = std::get_if<const Vra*>(&ref)) eval.emplace(**v);
  }
  const PushdownAlphabet& alphabet() const {
    if (auto* v = std::get_if<const Vra*>(&ref)) return (*v)->alphabet;
    return std::get<const Vpa*>(ref)->alphabet;
  }
  bool accepts(const Word& w) const {
    if (eval) return eval->member(w).accepted;
    return vpa_member(*std::get<const Vpa*>(ref), w);
  }
};

}  // namespace

Verdict bounded_equiv(AcceptorRef a, AcceptorRef b, const EnumerationBudget& budget) {
  Acceptor left(a), right(b);
  if (!(left.alphabet() == right.alphabet())) {
    throw AlphabetMismatchError("bounded_equiv: operands use different pushdown alphabets");
  }
  Verdict verdict;
  auto by_len = words_by_length(budget.alphabet, budget.max_len);
  std::size_t emitted = 0;
  for (const auto& bucket : by_len) {
    for (const Word& w : bucket) {
      if (budget.max_words && emitted >= *budget.max_words) {
        throw BudgetExceededError("enumeration exceeds max_words cap");
      }
      ++emitted;
      if (left.accepts(w) != right.accepts(w)) {
        verdict.equal = false;
        verdict.differ_at = w;
        return verdict;
      }
    }
  }
  return verdict;
}

Verdict bounded_equiv(const Vra& a, const Vra& b, int max_len) {
  return bounded_equiv(AcceptorRef{&a}, AcceptorRef{&b},
                       EnumerationBudget{max_len, std::nullopt, a.alphabet});
}

Verdict bounded_equiv(const Vra& a, const Vpa& b, int max_len) {
  return bounded_equiv(AcceptorRef{&a}, AcceptorRef{&b},
                       EnumerationBudget{max_len, std::nullopt, a.alphabet});
}

Verdict bounded_equiv(const Vpa& a, const Vpa& b, int max_len) {
  return bounded_equiv(AcceptorRef{&a}, AcceptorRef{&b},
                       EnumerationBudget{max_len, std::nullopt, a.alphabet});
}

namespace {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  int range(int lo, int hi) {  // inclusive; uniform enough for fixtures
    return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
};

}  // namespace

Vra random_vra(const RandomVraParams& params) {
  Rng rng(params.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);

  static const char* internal_pool[] = {"a", "b", "e", "g"};
  static const char* call_pool[] = {"c", "d", "h", "k"};
  static const char* ret_pool[] = {"r", "s", "u", "v"};

  PushdownAlphabet alphabet;
  int ni = rng.range(params.min_symbols, params.max_symbols);
  int nc = rng.range(params.min_symbols, params.max_symbols);
  int nr = rng.range(params.min_symbols, params.max_symbols);
  for (int i = 0; i < ni; ++i) alphabet.internal.push_back(Symbol{internal_pool[i]});
  for (int i = 0; i < nc; ++i) alphabet.call.push_back(Symbol{call_pool[i]});
  for (int i = 0; i < nr; ++i) alphabet.ret.push_back(Symbol{ret_pool[i]});
  std::sort(alphabet.internal.begin(), alphabet.internal.end());
  std::sort(alphabet.call.begin(), alphabet.call.end());
  std::sort(alphabet.ret.begin(), alphabet.ret.end());

  int k = rng.range(params.min_modules, params.max_modules);
  ProceduralAlphabet procs;
  std::vector<Symbol> proc_syms;
  for (int i = 0; i < k; ++i) {
    Symbol sym{"J" + std::to_string(i + 1)};
    Symbol c = alphabet.call[static_cast<std::size_t>(rng.range(0, nc - 1))];
    Symbol r = alphabet.ret[static_cast<std::size_t>(rng.range(0, nr - 1))];
    procs.link[sym] = {c, r, {}, false};
    proc_syms.push_back(sym);
  }

  std::vector<Symbol> labels = alphabet.internal;
  labels.insert(labels.end(), proc_syms.begin(), proc_syms.end());

  double density = params.min_density +
                   (params.max_density - params.min_density) * rng.unit();

  auto random_fa = [&](const std::string& prefix) {
    FiniteAutomaton fa;
    int m = rng.range(params.min_states, params.max_states);
    for (int i = 0; i < m; ++i) fa.add_state(prefix + std::to_string(i));
    fa.mark_initial(fa.states[static_cast<std::size_t>(rng.range(0, m - 1))]);
    for (StateId q : fa.states) {
      if (rng.chance(0.25)) fa.mark_initial(q);
      if (rng.chance(0.4)) fa.mark_final(q);
      for (Symbol a : labels) {
        if (rng.chance(density)) {
          fa.add_transition(q, a, fa.states[static_cast<std::size_t>(rng.range(0, m - 1))]);
        }
        if (rng.chance(density * 0.25)) {
          fa.add_transition(q, a, fa.states[static_cast<std::size_t>(rng.range(0, m - 1))]);
        }
      }
    }
    fa.normalize();
    return fa;
  };

  std::map<Symbol, FiniteAutomaton> modules;
  for (Symbol sym : proc_syms) modules[sym] = random_fa(sym.name() + "q");
  FiniteAutomaton start = random_fa("sq");
  return make_vra(alphabet, procs, std::move(modules), std::move(start));
}

Vra random_vra(std::uint64_t seed) {
  RandomVraParams params;
  params.seed = seed;
  return random_vra(params);
}

}  // namespace vra::oracle
