#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "vra/codet.hpp"
#include "vra/decisions.hpp"
#include "vra/errors.hpp"
#include "vra/lang_ops.hpp"
#include "vra/oracle.hpp"
#include "vra/semantics.hpp"

using namespace vra;

namespace {

std::set<Word> language(const Vra& v, int max_len) {
  std::set<Word> out;
  MembershipEvaluator eval(v);
  oracle::EnumerationBudget budget{max_len, std::nullopt, v.alphabet};
  oracle::enumerate_wm(budget, [&](const Word& w) {
    if (eval.member(w).accepted) out.insert(w);
  });
  return out;
}

std::set<Word> concat_sets(const std::set<Word>& l1, const std::set<Word>& l2,
                           int max_len) {
  std::set<Word> out;
  for (const auto& w1 : l1) {
    for (const auto& w2 : l2) {
      if (static_cast<int>(w1.size() + w2.size()) <= max_len) out.insert(w1 + w2);
    }
  }
  return out;
}

std::set<Word> star_set(const std::set<Word>& l, int max_len) {
  std::set<Word> out{Word{}};
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<Word> next = out;
    for (const auto& base : out) {
      for (const auto& w : l) {
        if (w.empty()) continue;
        if (static_cast<int>(base.size() + w.size()) > max_len) continue;
        if (next.insert(base + w).second) grew = true;
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("concatenation on the nested fixture") {
  Vra v = fixtures::nested_vra();
  Vra cc = vra_concat(v, v);
  CHECK(validate_vra(cc).empty());

  MembershipEvaluator eval(cc);
  // ccrar · ccrar is accepted; a single ccrar is not, since ε ∉ L.
  CHECK(eval.member(fixtures::word(v, "ccrarccrar")).accepted);
  CHECK(!eval.member(fixtures::word(v, "ccrar")).accepted);

  auto expected = concat_sets(language(v, 6), language(v, 6), 6);
  CHECK(language(cc, 6) == expected);
}

TEST_CASE("concatenation identities") {
  Vra v = fixtures::nested_vra();

  Vra right_eps = vra_concat(v, fixtures::epsilon_vra());
  CHECK(language(right_eps, 6) == language(v, 6));

  Vra annihilated = vra_concat(v, fixtures::empty_lang_vra());
  CHECK(is_empty(annihilated).empty);
}

TEST_CASE("star on the nested fixture") {
  Vra v = fixtures::nested_vra();
  Vra st = vra_star(v);
  CHECK(validate_vra(st).empty());

  MembershipEvaluator eval(st);
  CHECK(eval.member(Word{}).accepted);
  CHECK(eval.member(fixtures::word(v, "car")).accepted);     // car ∈ L
  CHECK(eval.member(fixtures::word(v, "carcar")).accepted);  // L·L

  CHECK(language(st, 6) == star_set(language(v, 6), 6));

  // Idempotence and the empty-language case.
  CHECK(language(vra_star(st), 5) == language(st, 5));
  Vra none_star = vra_star(fixtures::empty_lang_vra());
  auto lang = language(none_star, 5);
  CHECK(lang == std::set<Word>{Word{}});
}

TEST_CASE("union on the fixtures") {
  Vra a = fixtures::nested_vra();
  Vra b = fixtures::det_vra();
  Vra u = vra_union(a, b);
  CHECK(validate_vra(u).empty());

  MembershipEvaluator eval(u);
  CHECK(eval.member(fixtures::word(a, "ccrar")).accepted);
  CHECK(eval.member(fixtures::word(a, "carcr")).accepted);

  std::set<Word> expected = language(a, 6);
  auto lb = language(b, 6);
  expected.insert(lb.begin(), lb.end());
  CHECK(language(u, 6) == expected);

  CHECK(language(vra_union(a, a), 6) == language(a, 6));
  CHECK(language(vra_union(a, fixtures::empty_lang_vra()), 6) == language(a, 6));
}

TEST_CASE("intersection on the fixtures") {
  Vra a = fixtures::nested_vra();
  Vra b = fixtures::det_vra();

  Vra self = vra_intersect(a, a);
  CHECK(validate_vra(self).empty());
  CHECK(language(self, 6) == language(a, 6));

  Vra both = vra_intersect(a, b);
  std::set<Word> expected;
  auto la = language(a, 8);
  auto lb = language(b, 8);
  for (const auto& w : la) {
    if (lb.count(w)) expected.insert(w);
  }
  CHECK(language(both, 8) == expected);

  Vra nothing = vra_intersect(a, vra_complement(a));
  CHECK(is_empty(nothing).empty);
}

TEST_CASE("complement on the nested fixture") {
  Vra v = fixtures::nested_vra();
  Vra co = vra_complement(v);
  CHECK(validate_vra(co).empty());

  MembershipEvaluator eval(co);
  CHECK(eval.member(fixtures::word(v, "ccarar")).accepted);
  CHECK(!eval.member(fixtures::word(v, "ccrar")).accepted);

  // Exactly one of v, ¬v accepts every well-matched word up to length 8.
  MembershipEvaluator orig(v);
  oracle::EnumerationBudget budget{8, std::nullopt, v.alphabet};
  oracle::enumerate_wm(budget, [&](const Word& w) {
    CHECK(orig.member(w).accepted != eval.member(w).accepted);
  });

  // Involution on bounded words.
  CHECK(language(vra_complement(co), 6) == language(v, 6));
}

TEST_CASE("complement of a partition-form input flips only the start") {
  Vra v = fixtures::nested_vra();
  Vra normal = codet_complete(v, CodetTrim::On).vra;
  Vra co = vra_complement(normal);
  CHECK(co.modules.size() == normal.modules.size());
  CHECK(co.state_count() == normal.state_count());
  CHECK(has_regular_partition_form(co));
  CHECK(language(vra_complement(co), 6) == language(normal, 6));
}

TEST_CASE("alphabet mismatch is rejected") {
  Vra a = fixtures::nested_vra();
  Vra b = fixtures::nested_vra();
  b.alphabet.internal.push_back(Symbol{"b"});
  std::sort(b.alphabet.internal.begin(), b.alphabet.internal.end());
  CHECK_THROWS_AS(vra_concat(a, b), AlphabetMismatchError);
  CHECK_THROWS_AS(vra_union(a, b), AlphabetMismatchError);
  CHECK_THROWS_AS(vra_intersect(a, b), AlphabetMismatchError);
}

TEST_CASE("operand symbols are renamed apart automatically") {
  Vra a = fixtures::nested_vra();
  Vra u = vra_union(a, a);  // shares R, T with itself
  CHECK(validate_vra(u).empty());
  CHECK(u.procs.link.size() == 4);
  CHECK(u.modules.size() == 4);
}

TEST_CASE("preserving variants keep the normal form") {
  Vra x = codet_complete(fixtures::nested_vra(), CodetTrim::On).vra;

  Vra u = vra_union_cc(x, x);
  CHECK(validate_vra(u).empty());
  CHECK(has_regular_partition_form(u));
  CHECK(is_codeterministic(u).codeterministic);
  CHECK(is_complete(u).complete);
  CHECK(language(u, 6) == language(x, 6));

  Vra i = vra_intersect_cc(x, x);
  CHECK(has_regular_partition_form(i));
  CHECK(language(i, 6) == language(x, 6));

  Vra s = vra_star_cc(x);
  CHECK(has_regular_partition_form(s));
  auto labels = s.fa_labels();
  CHECK(s.start.deterministic());
  CHECK(s.start.complete(labels));
  CHECK(language(s, 6) == star_set(language(x, 6), 6));

  Vra c = vra_concat_cc(x, x);
  CHECK(has_regular_partition_form(c));
  CHECK(language(c, 6) == concat_sets(language(x, 6), language(x, 6), 6));
}

TEST_CASE("preserving variants handle ε-containing operands") {
  Vra x = codet_complete(fixtures::nested_vra(), CodetTrim::On).vra;
  Vra y = vra_star_cc(x);  // ε ∈ L(y)

  Vra c = vra_concat_cc(y, x);
  CHECK(has_regular_partition_form(c));
  CHECK(language(c, 6) == concat_sets(language(y, 6), language(x, 6), 6));

  Vra u = vra_union_cc(y, x);
  CHECK(has_regular_partition_form(u));
  std::set<Word> expected = language(y, 6);
  auto lx = language(x, 6);
  expected.insert(lx.begin(), lx.end());
  CHECK(language(u, 6) == expected);
}

TEST_CASE("preserving variants reject inputs off the normal form") {
  Vra raw = fixtures::nested_vra();
  CHECK_THROWS_AS(vra_star_cc(raw), NotCodetCompleteError);
  CHECK_THROWS_AS(vra_union_cc(raw, raw), NotCodetCompleteError);
}

TEST_CASE("intersect_cc outputs keep the per-pair partition of words") {
  Vra x = codet_complete(fixtures::nested_vra(), CodetTrim::On).vra;
  Vra i = vra_intersect_cc(x, x);
  MembershipEvaluator eval(i);

  oracle::EnumerationBudget budget{6, std::nullopt, i.alphabet};
  for (const auto& w : oracle::enumerate_wm(budget)) {
    int count = 0;
    for (const auto& [sym, _] : i.procs.link) {
      if (eval.accepts_from(ModuleTag::module(sym), w)) ++count;
    }
    CHECK(count == 1);
  }
}

TEST_CASE("linear and quadratic size bounds hold on random instances") {
  // Documented constants: the ε-free constructions copy both operands and add
  // at most |I2|-fan-in bridge transitions (|I| ≤ 4 in the generator), so 8
  // covers concat/star/union; the product stays within 2·|a|·|b|.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Vra a = oracle::random_vra(seed);
    Vra b = oracle::random_vra(seed + 1000);
    if (!(a.alphabet == b.alphabet)) continue;

    CHECK(vra_concat(a, b).size() <= 8 * (a.size() + b.size()));
    CHECK(vra_union(a, b).size() <= 8 * (a.size() + b.size()));
    CHECK(vra_star(a).size() <= 8 * a.size());
    CHECK(vra_intersect(a, b).size() <= 2 * a.size() * b.size());
  }
}
