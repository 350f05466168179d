#include <benchmark/benchmark.h>

#include "vra/codet.hpp"
#include "vra/decisions.hpp"
#include "vra/lang_ops.hpp"
#include "vra/model.hpp"
#include "vra/oracle.hpp"
#include "vra/semantics.hpp"
#include "vra/vpa.hpp"

namespace {

using namespace vra;

// The running three-module example over {a} ∪ {c} ∪ {r}.
Vra nested_vra() {
  Symbol a{"a"}, R{"R"}, T{"T"};
  FiniteAutomaton s;
  StateId s0 = s.add_state("s0"), s1 = s.add_state("s1");
  s.mark_initial(s0);
  s.mark_final(s1);
  s.add_transition(s0, R, s1);
  s.normalize();
  FiniteAutomaton r;
  StateId r0 = r.add_state("r0"), r1 = r.add_state("r1");
  r.mark_initial(r0);
  r.mark_final(r1);
  r.add_transition(r0, T, r0);
  r.add_transition(r0, R, r1);
  r.add_transition(r0, a, r1);
  r.normalize();
  FiniteAutomaton t;
  StateId t0 = t.add_state("t0");
  t.mark_initial(t0);
  t.mark_final(t0);
  t.add_transition(t0, R, t0);
  t.add_transition(t0, T, t0);
  t.normalize();
  ProceduralAlphabet procs;
  procs.link[R] = {Symbol{"c"}, Symbol{"r"}, {}, false};
  procs.link[T] = {Symbol{"c"}, Symbol{"r"}, {}, false};
  return make_vra(
      PushdownAlphabet{{Symbol{"a"}}, {Symbol{"c"}}, {Symbol{"r"}}}, procs,
      {{R, r}, {T, t}}, s);
}

Word deep_word(int depth) {
  // c^depth a r a r ... : a long accepted word exercising the call stack.
  Word w;
  Symbol a{"a"}, c{"c"}, r{"r"};
  for (int i = 0; i < depth; ++i) w.letters.push_back(c);
  w.letters.push_back(r);
  for (int i = 1; i < depth; ++i) {
    w.letters.push_back(a);
    w.letters.push_back(r);
  }
  return w;
}

void bm_membership(benchmark::State& state) {
  Vra v = nested_vra();
  MembershipEvaluator eval(v);
  Word w = deep_word(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.member(w).accepted);
  }
}
BENCHMARK(bm_membership)->Arg(4)->Arg(16)->Arg(64);

void bm_brute_force(benchmark::State& state) {
  Vra v = nested_vra();
  Word w = deep_word(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::brute_force_member(v, w, static_cast<int>(w.size())));
  }
}
BENCHMARK(bm_brute_force)->Arg(4)->Arg(16);

void bm_emptiness(benchmark::State& state) {
  Vra v = oracle::random_vra(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_empty(v).empty);
  }
}
BENCHMARK(bm_emptiness)->Arg(7)->Arg(42);

void bm_codet_complete(benchmark::State& state) {
  Vra v = nested_vra();
  for (auto _ : state) {
    benchmark::DoNotOptimize(codet_complete(v, CodetTrim::On).vra.size());
  }
}
BENCHMARK(bm_codet_complete);

void bm_complement(benchmark::State& state) {
  Vra v = nested_vra();
  for (auto _ : state) {
    benchmark::DoNotOptimize(vra_complement(v).size());
  }
}
BENCHMARK(bm_complement);

void bm_vra_to_vpa(benchmark::State& state) {
  Vra v = nested_vra();
  for (auto _ : state) {
    benchmark::DoNotOptimize(vra_to_vpa(v).size());
  }
}
BENCHMARK(bm_vra_to_vpa);

}  // namespace

BENCHMARK_MAIN();
