#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "vra/codet.hpp"
#include "vra/decisions.hpp"
#include "vra/errors.hpp"
#include "vra/lang_ops.hpp"
#include "vra/oracle.hpp"
#include "vra/semantics.hpp"
#include "vra/vpa.hpp"

using namespace vra;

namespace {

// Round-based transcription of the fixpoint: Reach_0 = initials and
// Reach_{i+1} extends over internal plus currently-enabled procedural labels.
// Cross-checks the worklist implementation and its monotonicity.
struct RoundFixpoint {
  std::vector<std::set<StateId>> reach_rounds;
  std::vector<std::set<Symbol>> enabled_rounds;

  explicit RoundFixpoint(const Vra& v) {
    std::set<StateId> reach;
    for (const auto& tag : v.module_tags()) {
      for (StateId q : v.automaton(tag).initials) reach.insert(q);
    }
    while (true) {
      std::set<Symbol> enabled;
      for (const auto& [sym, fa] : v.modules) {
        for (StateId f : fa.finals) {
          if (reach.count(f)) {
            enabled.insert(sym);
            break;
          }
        }
      }
      reach_rounds.push_back(reach);
      enabled_rounds.push_back(enabled);

      std::set<StateId> next = reach;
      for (const auto& tag : v.module_tags()) {
        for (const auto& t : v.automaton(tag).transitions) {
          if (!reach.count(t.src)) continue;
          bool usable = v.alphabet.is_internal(t.label) || enabled.count(t.label);
          if (usable) next.insert(t.dst);
        }
      }
      if (next == reach) break;
      reach = std::move(next);
    }
  }
};

bool oracle_nonempty(const Vra& v, int max_len) {
  MembershipEvaluator eval(v);
  bool found = false;
  oracle::EnumerationBudget budget{max_len, std::nullopt, v.alphabet};
  oracle::enumerate_wm(budget, [&](const Word& w) {
    if (found) return;
    if (eval.member(w).accepted) found = true;
  });
  return found;
}

}  // namespace

TEST_CASE("emptiness on the fixtures") {
  Vra v = fixtures::nested_vra();
  auto r = is_empty(v);
  CHECK(!r.empty);
  REQUIRE(r.certificate.witness.has_value());
  CHECK(vra_member(v, *r.certificate.witness).accepted);

  CHECK(is_empty(fixtures::empty_lang_vra()).empty);
  CHECK(!is_empty(fixtures::epsilon_vra()).empty);
}

TEST_CASE("a module with an empty language never gets enabled") {
  Vra v = fixtures::dead_module_vra();
  auto r = is_empty(v);
  CHECK(r.empty);
  CHECK(std::find(r.certificate.enabled.begin(), r.certificate.enabled.end(),
                  Symbol{"J1"}) == r.certificate.enabled.end());
  CHECK(std::find(r.certificate.enabled.begin(), r.certificate.enabled.end(),
                  Symbol{"J2"}) != r.certificate.enabled.end());
  CHECK(!oracle_nonempty(v, 8));
}

TEST_CASE("worklist fixpoint matches the round-based fixpoint") {
  std::vector<Vra> subjects = {fixtures::nested_vra(), fixtures::det_vra(),
                               fixtures::dead_module_vra()};
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    subjects.push_back(oracle::random_vra(seed));
  }
  for (const auto& v : subjects) {
    RoundFixpoint rounds(v);
    ReachAnalysis worklist(v);

    // Rounds grow monotonically and converge within |states| rounds.
    for (std::size_t i = 1; i < rounds.reach_rounds.size(); ++i) {
      CHECK(std::includes(rounds.reach_rounds[i].begin(), rounds.reach_rounds[i].end(),
                          rounds.reach_rounds[i - 1].begin(),
                          rounds.reach_rounds[i - 1].end()));
      CHECK(std::includes(rounds.enabled_rounds[i].begin(), rounds.enabled_rounds[i].end(),
                          rounds.enabled_rounds[i - 1].begin(),
                          rounds.enabled_rounds[i - 1].end()));
    }
    CHECK(rounds.reach_rounds.size() <= v.state_count() + 1);

    const auto& final_reach = rounds.reach_rounds.back();
    std::set<StateId> got(worklist.reach().begin(), worklist.reach().end());
    CHECK(got == final_reach);
    std::set<Symbol> got_enabled(worklist.enabled().begin(), worklist.enabled().end());
    CHECK(got_enabled == rounds.enabled_rounds.back());
  }
}

TEST_CASE("per-module nonemptiness matches the bounded oracle") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Vra v = oracle::random_vra(seed);
    ReachAnalysis analysis(v);
    MembershipEvaluator eval(v);

    // One enumeration pass certifies bounded nonemptiness for all modules:
    // each word's relation answers acceptance for every module at once.
    std::set<ModuleTag> bounded;
    const std::size_t total = v.module_tags().size();
    oracle::EnumerationBudget budget{8, std::nullopt, v.alphabet};
    oracle::enumerate_wm(budget, [&](const Word& w) {
      if (bounded.size() == total) return;
      auto rel = eval.module_relation(w);
      for (const auto& tag : v.module_tags()) {
        if (bounded.count(tag)) continue;
        const auto& fa = v.automaton(tag);
        const auto& pairs = rel.at(tag);
        for (const auto& [from, to] : pairs) {
          if (fa.is_initial(from) && fa.is_final(to)) {
            bounded.insert(tag);
            break;
          }
        }
      }
    });

    for (const auto& tag : v.module_tags()) {
      bool decided = analysis.module_nonempty(tag);
      // The oracle certifies nonemptiness only; emptiness verdicts must agree
      // with it, and claimed witnesses must re-validate.
      if (bounded.count(tag)) CHECK(decided);
      if (decided) {
        Word w = analysis.witness(tag);
        Vra rooted = tag.is_start() ? v : make_vra(v.alphabet, v.procs, v.modules,
                                                   v.modules.at(*tag.proc));
        CHECK(vra_member(rooted, w).accepted);
      }
    }
  }
}

TEST_CASE("universality on the fixtures") {
  Vra v = fixtures::nested_vra();
  auto r = is_universal(v);
  CHECK(!r.holds);
  REQUIRE(r.counterexample.has_value());
  CHECK(!vra_member(v, *r.counterexample).accepted);
  CHECK(classify(*r.counterexample, v.alphabet).is_well_matched);

  Vra everything = vra_union(v, vra_complement(v));
  CHECK(is_universal(everything).holds);

  Vra normal = codet_complete(v, CodetTrim::On).vra;
  CHECK(!is_universal(normal).holds);
}

TEST_CASE("inclusion on the fixtures") {
  Vra v = fixtures::nested_vra();
  CHECK(includes(v, v).holds);

  auto r = includes(v, fixtures::empty_lang_vra());
  CHECK(!r.holds);
  REQUIRE(r.counterexample.has_value());
  CHECK(vra_member(v, *r.counterexample).accepted);

  CHECK_THROWS_AS(includes(v, oracle::random_vra(4)), AlphabetMismatchError);
}

TEST_CASE("intersections are included in both operands") {
  int tested = 0;
  for (std::uint64_t seed = 1; tested < 20; ++seed) {
    Vra a = oracle::random_vra(seed);
    Vra b = oracle::random_vra(seed + 2000);
    if (!(a.alphabet == b.alphabet)) continue;
    ++tested;
    Vra both = vra_intersect(a, b);
    CHECK(includes(both, a).holds);
    CHECK(includes(both, b).holds);
  }
}

TEST_CASE("equivalence on the fixtures") {
  Vra v = fixtures::nested_vra();

  Vra round = vpa_to_vra(vra_to_vpa(v), true);
  CHECK(equivalent(v, round).holds);

  Vra normal = codet_complete(v, CodetTrim::On).vra;
  CHECK(equivalent(v, normal).holds);

  auto r = equivalent(v, vra_complement(v));
  CHECK(!r.holds);
  REQUIRE(r.counterexample.has_value());
}

TEST_CASE("decision verdicts agree with bounded-oracle counterexamples") {
  int pairs = 0;
  for (std::uint64_t seed = 300; pairs < 12; ++seed) {
    Vra a = oracle::random_vra(seed);
    Vra b = oracle::random_vra(seed + 5000);
    if (!(a.alphabet == b.alphabet)) continue;
    ++pairs;

    MembershipEvaluator ea(a);
    MembershipEvaluator eb(b);
    std::optional<Word> not_included;  // some w ∈ L(a) \ L(b), length ≤ 6
    oracle::EnumerationBudget budget{6, std::nullopt, a.alphabet};
    oracle::enumerate_wm(budget, [&](const Word& w) {
      if (not_included) return;
      if (ea.member(w).accepted && !eb.member(w).accepted) not_included = w;
    });

    auto verdict = includes(a, b);
    if (not_included) CHECK(!verdict.holds);
    if (!verdict.holds) {
      REQUIRE(verdict.counterexample.has_value());
      CHECK(ea.member(*verdict.counterexample).accepted);
      CHECK(!eb.member(*verdict.counterexample).accepted);
    }
  }
}
