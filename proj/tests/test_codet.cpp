#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "vra/codet.hpp"
#include "vra/fa_ops.hpp"
#include "vra/oracle.hpp"
#include "vra/semantics.hpp"

using namespace vra;

namespace {

Vra rerooted(const Vra& v, Symbol module) {
  return make_vra(v.alphabet, v.procs, v.modules, v.modules.at(module));
}

std::set<std::vector<std::string>> member_sets(const CodetCompleteResult& r) {
  std::set<std::vector<std::string>> out;
  for (const auto& s : r.subset_symbols) {
    std::vector<std::string> names;
    for (Symbol m : s.members) names.push_back(m.name());
    std::sort(names.begin(), names.end());
    out.insert(names);
  }
  return out;
}

std::size_t formula_states(const Vra& v) {
  // 2^{|Q^S|} + Σ_{(c,r)} 2^{|Σ_proc^(c,r)|} · 2^{Σ_J |Q^J|}
  std::size_t total = static_cast<std::size_t>(1) << v.start.states.size();
  for (Symbol c : v.alphabet.call) {
    for (Symbol r : v.alphabet.ret) {
      auto group = v.procs.group(c, r);
      std::size_t sum_states = 0;
      for (Symbol j : group) sum_states += v.modules.at(j).states.size();
      total += (static_cast<std::size_t>(1) << group.size()) *
               (static_cast<std::size_t>(1) << sum_states);
    }
  }
  return total;
}

}  // namespace

TEST_CASE("determinism predicate") {
  auto nested = fixtures::nested_vra();
  auto report = is_deterministic(nested);
  CHECK(!report.deterministic);
  bool cites_r0_conflict = false;
  for (const auto& d : report.diagnostics) {
    cites_r0_conflict |= d.code == "call-conflict" &&
                         d.message.find("r0") != std::string::npos &&
                         d.message.find("R") != std::string::npos &&
                         d.message.find("T") != std::string::npos;
  }
  CHECK(cites_r0_conflict);

  CHECK(is_deterministic(fixtures::det_vra()).deterministic);

  // Two initial states break determinism.
  Vra two = fixtures::det_vra();
  two.start.mark_initial(two.start.states[1]);
  two.start.normalize();
  CHECK(!is_deterministic(two).deterministic);
}

TEST_CASE("spa predicate") {
  CHECK(!is_spa(fixtures::det_vra()));  // f_call(R) = f_call(T)
  CHECK(!is_spa(fixtures::nested_vra()));

  // Dropping T (and its transitions) makes the deterministic fixture an SPA.
  Vra v = fixtures::det_vra();
  v.procs.link.erase(Symbol{"T"});
  v.modules.erase(Symbol{"T"});
  auto strip = [](FiniteAutomaton& fa) {
    std::vector<Transition> keep;
    for (const auto& t : fa.transitions) {
      if (!(t.label == Symbol{"T"})) keep.push_back(t);
    }
    fa.transitions = keep;
    fa.normalize();
  };
  strip(v.start);
  for (auto& [_, fa] : v.modules) strip(fa);
  REQUIRE(validate_vra(v).empty());
  CHECK(is_spa(v));

  // Empty procedural alphabet with DFA modules is vacuously an SPA.
  CHECK(is_spa(fixtures::epsilon_vra()));
}

TEST_CASE("codeterminism predicate with validated witness") {
  Vra v = fixtures::nested_vra();
  auto report = is_codeterministic(v);
  CHECK(!report.codeterministic);
  REQUIRE(report.conflict.has_value());
  CHECK(report.conflict->first == Symbol{"R"});
  CHECK(report.conflict->second == Symbol{"T"});
  REQUIRE(report.witness.has_value());

  // The witness lies in both recursive languages, checked on re-rooted copies.
  CHECK(vra_member(rerooted(v, Symbol{"R"}), *report.witness).accepted);
  CHECK(vra_member(rerooted(v, Symbol{"T"}), *report.witness).accepted);
}

TEST_CASE("codeterminism holds without shared pairs") {
  CHECK(is_codeterministic(fixtures::epsilon_vra()).codeterministic);

  // One module per pair: nothing to compare.
  Vra v = fixtures::det_vra();
  v.alphabet.call.push_back(Symbol{"d"});
  std::sort(v.alphabet.call.begin(), v.alphabet.call.end());
  v.procs.link[Symbol{"T"}].call = Symbol{"d"};
  REQUIRE(validate_vra(v).empty());
  CHECK(is_codeterministic(v).codeterministic);
}

TEST_CASE("completeness predicate") {
  auto report = is_complete(fixtures::nested_vra());
  CHECK(!report.complete);  // the fixture FAs are not even complete

  // Empty call alphabet: only FA-completeness matters.
  PushdownAlphabet internal_only;
  internal_only.internal = {Symbol{"a"}};
  FiniteAutomaton loop;
  StateId q = loop.add_state("q0");
  loop.mark_initial(q);
  loop.mark_final(q);
  loop.add_transition(q, Symbol{"a"}, q);
  loop.normalize();
  Vra flat = make_vra(internal_only, ProceduralAlphabet{}, {}, loop);
  CHECK(is_complete(flat).complete);

  // A pair with no linked module cannot cover WM.
  Vra uncovered = fixtures::epsilon_vra();  // alphabet has c and r, no modules
  FiniteAutomaton complete_start;
  StateId u = complete_start.add_state("u0");
  complete_start.mark_initial(u);
  complete_start.mark_final(u);
  complete_start.add_transition(u, Symbol{"a"}, u);
  complete_start.normalize();
  uncovered.start = complete_start;
  auto r2 = is_complete(uncovered);
  CHECK(!r2.complete);
  REQUIRE(r2.failing_pair.has_value());
}

TEST_CASE("the normal form on the nested fixture") {
  Vra v = fixtures::nested_vra();
  auto result = codet_complete(v, CodetTrim::On);
  const Vra& out = result.vra;

  CHECK(validate_vra(out).empty());
  CHECK(member_sets(result) ==
        std::set<std::vector<std::string>>{{}, {"R"}, {"T"}, {"R", "T"}});

  // Every module is a complete DFA.
  auto labels = out.fa_labels();
  for (const auto& tag : out.module_tags()) {
    const auto& fa = out.automaton(tag);
    CHECK(fa.deterministic());
    CHECK(fa.complete(labels));
  }

  CHECK(is_codeterministic(out).codeterministic);
  CHECK(is_complete(out).complete);
  CHECK(has_regular_partition_form(out));
  CHECK(!has_regular_partition_form(v));

  CHECK(oracle::bounded_equiv(v, out, 8).equal);
}

TEST_CASE("the trimmed normal form matches the worked shapes") {
  Vra v = fixtures::nested_vra();
  auto result = codet_complete(v, CodetTrim::On);
  const Vra& out = result.vra;

  // Start: {s0}, {s1}, sink; final {s1} only.
  CHECK(out.start.states.size() == 3);
  CHECK(out.start.finals.size() == 1);
  CHECK(out.start.name_of(out.start.finals[0]) == "{s1}");

  auto find_subset = [&](const std::vector<std::string>& members) {
    for (const auto& s : result.subset_symbols) {
      std::vector<std::string> names;
      for (Symbol m : s.members) names.push_back(m.name());
      if (names == members) return s.symbol;
    }
    REQUIRE(false);
    return Symbol{};
  };

  // Module for {T}: six reachable product states, finals as in the worked
  // example; the final of the empty-set module is the all-empty product.
  const auto& mod_t = out.modules.at(find_subset({"T"}));
  CHECK(mod_t.states.size() == 6);
  std::set<std::string> final_names;
  for (StateId f : mod_t.finals) final_names.insert(mod_t.name_of(f));
  CHECK(final_names == std::set<std::string>{"({r0},{t0})", "({},{t0})"});

  const auto& mod_empty = out.modules.at(find_subset({}));
  REQUIRE(mod_empty.finals.size() == 1);
  CHECK(mod_empty.name_of(mod_empty.finals[0]) == "({},{})");

  // All four modules share the transition skeleton, differing in finals.
  const auto& mod_rt = out.modules.at(find_subset({"R", "T"}));
  CHECK(mod_rt.states.size() == mod_t.states.size());
  CHECK(mod_rt.transitions.size() == mod_t.transitions.size());
}

TEST_CASE("the untrimmed normal form matches the state-count formula") {
  Vra v = fixtures::nested_vra();
  auto result = codet_complete(v, CodetTrim::Off);
  CHECK(result.vra.state_count() == formula_states(v));
  CHECK(result.vra.state_count() == 36);
  CHECK(oracle::bounded_equiv(v, result.vra, 8).equal);
  CHECK(is_codeterministic(result.vra).codeterministic);
  CHECK(is_complete(result.vra).complete);
}

TEST_CASE("regular languages of the output partition the label monoid") {
  Vra v = fixtures::nested_vra();
  auto result = codet_complete(v, CodetTrim::On);
  const Vra& out = result.vra;
  auto labels = out.fa_labels();

  // All regular words up to length 4 over Σ_int ∪ Σ'_proc.
  std::vector<std::vector<Symbol>> words{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= 4; ++len) {
    std::size_t end = words.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Symbol s : labels) {
        auto w = words[i];
        w.push_back(s);
        words.push_back(std::move(w));
      }
    }
    begin = end;
  }

  for (const auto& w : words) {
    int count = 0;
    for (const auto& s : result.subset_symbols) {
      if (fa_member(out.modules.at(s.symbol), w)) ++count;
    }
    CHECK(count == 1);
  }
}

TEST_CASE("source languages decompose over containing subsets") {
  Vra v = fixtures::nested_vra();
  auto result = codet_complete(v, CodetTrim::On);
  const Vra& out = result.vra;

  oracle::EnumerationBudget budget{6, std::nullopt, v.alphabet};
  auto words = oracle::enumerate_wm(budget);

  for (Symbol j : {Symbol{"R"}, Symbol{"T"}}) {
    Vra source_rooted = rerooted(v, j);
    std::vector<Vra> rooted;
    for (const auto& s : result.subset_symbols) {
      if (std::find(s.members.begin(), s.members.end(), j) != s.members.end()) {
        rooted.push_back(rerooted(out, s.symbol));
      }
    }
    MembershipEvaluator source(source_rooted);
    std::vector<MembershipEvaluator> outputs;
    for (const auto& rv : rooted) outputs.emplace_back(rv);
    for (const auto& w : words) {
      bool in_source = source.member(w).accepted;
      bool in_any = false;
      for (const auto& eval : outputs) in_any |= eval.member(w).accepted;
      CAPTURE(w.display());
      CHECK(in_source == in_any);
    }
  }
}

TEST_CASE("recursive languages of the output partition well-matched words") {
  Vra v = fixtures::nested_vra();
  auto result = codet_complete(v, CodetTrim::On);
  MembershipEvaluator eval(result.vra);

  oracle::EnumerationBudget budget{6, std::nullopt, v.alphabet};
  for (const auto& w : oracle::enumerate_wm(budget)) {
    int count = 0;
    for (const auto& s : result.subset_symbols) {
      if (eval.accepts_from(ModuleTag::module(s.symbol), w)) ++count;
    }
    CAPTURE(w.display());
    CHECK(count == 1);
  }
}

TEST_CASE("normal form of an already-normal VRA keeps the language") {
  Vra v = fixtures::nested_vra();
  Vra normal = codet_complete(v, CodetTrim::On).vra;
  auto again = codet_complete(normal, CodetTrim::On);
  CHECK(oracle::bounded_equiv(normal, again.vra, 6).equal);
  // Partition form is sufficient for codeterminism and completeness; the
  // sixteen-module output is too large for the quadratic decision procedures
  // to be worth running here.
  CHECK(has_regular_partition_form(again.vra));
  CHECK(again.vra.state_count() <= formula_states(normal));
}

TEST_CASE("the empty subset is a distinct symbol per call/return pair") {
  Vra v = fixtures::det_vra();
  v.alphabet.call.push_back(Symbol{"d"});
  std::sort(v.alphabet.call.begin(), v.alphabet.call.end());
  v.procs.link[Symbol{"T"}].call = Symbol{"d"};
  REQUIRE(validate_vra(v).empty());

  auto result = codet_complete(v, CodetTrim::On);
  // Two pairs with one source symbol each: {∅, {R}} and {∅, {T}}.
  CHECK(result.subset_symbols.size() == 4);
  std::set<Symbol> distinct;
  for (const auto& s : result.subset_symbols) distinct.insert(s.symbol);
  CHECK(distinct.size() == 4);
  CHECK(result.vra.modules.size() == 4);
  CHECK(oracle::bounded_equiv(v, result.vra, 6).equal);
  CHECK(has_regular_partition_form(result.vra));
}

TEST_CASE("normal form with no procedural symbols determinizes the start") {
  Vra v = fixtures::empty_lang_vra();
  auto result = codet_complete(v, CodetTrim::On);
  // One (c,r) pair exists in the alphabet, so Σ'_proc is the lone empty
  // subset whose module accepts everything.
  CHECK(result.subset_symbols.size() == 1);
  CHECK(result.vra.start.deterministic());
  CHECK(result.vra.start.complete(result.vra.fa_labels()));
  CHECK(oracle::bounded_equiv(v, result.vra, 6).equal);
}
