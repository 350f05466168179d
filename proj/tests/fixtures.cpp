#include "fixtures.hpp"

#include "vra/io.hpp"

namespace fixtures {

using vra::FiniteAutomaton;
using vra::ProceduralAlphabet;
using vra::PushdownAlphabet;
using vra::StateId;
using vra::Symbol;
using vra::Vpa;
using vra::Vra;

namespace {

PushdownAlphabet acr() {
  PushdownAlphabet a;
  a.internal = {Symbol{"a"}};
  a.call = {Symbol{"c"}};
  a.ret = {Symbol{"r"}};
  return a;
}

}  // namespace

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

  return vra::make_vra(acr(), procs, {{R, r}, {T, t}}, s);
}

Vra det_vra() {
  Symbol a{"a"}, R{"R"}, T{"T"};

  FiniteAutomaton s;
  StateId s0 = s.add_state("s0"), s1 = s.add_state("s1"), s2 = s.add_state("s2");
  s.mark_initial(s0);
  s.mark_final(s2);
  s.add_transition(s0, R, s1);
  s.add_transition(s1, T, s2);
  s.normalize();

  FiniteAutomaton r;
  StateId r0 = r.add_state("r0"), r1 = r.add_state("r1");
  r.mark_initial(r0);
  r.mark_final(r1);
  r.add_transition(r0, a, r1);
  r.normalize();

  FiniteAutomaton t;
  StateId t0 = t.add_state("t0");
  t.mark_initial(t0);
  t.mark_final(t0);
  t.add_transition(t0, R, t0);
  t.normalize();

  ProceduralAlphabet procs;
  procs.link[R] = {Symbol{"c"}, Symbol{"r"}, {}, false};
  procs.link[T] = {Symbol{"c"}, Symbol{"r"}, {}, false};

  return vra::make_vra(acr(), procs, {{R, r}, {T, t}}, s);
}

Vpa small_vpa() {
  Vpa p;
  p.alphabet = acr();
  Symbol g{"g"};
  p.stack_alphabet = {g};
  p.states = {0, 1};
  p.names[0] = "q0";
  p.names[1] = "q1";
  p.initials = {0};
  p.finals = {0};
  p.internal_transitions = {{0, Symbol{"a"}, 1}};
  p.call_transitions = {{1, Symbol{"c"}, 1, g}};
  p.return_transitions = {{0, Symbol{"r"}, g, 0}, {1, Symbol{"r"}, g, 0}};
  p.normalize();
  return p;
}

Vra dead_module_vra() {
  Symbol J1{"J1"}, J2{"J2"};

  FiniteAutomaton s;
  StateId s0 = s.add_state("s0"), s1 = s.add_state("s1");
  s.mark_initial(s0);
  s.mark_final(s1);
  s.add_transition(s0, J1, s1);
  s.normalize();

  // J1's final is unreachable: L(A^J1) = ∅.
  FiniteAutomaton m1;
  StateId p0 = m1.add_state("p0"), p1 = m1.add_state("p1");
  m1.mark_initial(p0);
  m1.mark_final(p1);
  m1.add_transition(p1, J2, p1);
  m1.normalize();

  FiniteAutomaton m2;
  StateId u0 = m2.add_state("u0");
  m2.mark_initial(u0);
  m2.mark_final(u0);
  m2.normalize();

  ProceduralAlphabet procs;
  procs.link[J1] = {Symbol{"c"}, Symbol{"r"}, {}, false};
  procs.link[J2] = {Symbol{"c"}, Symbol{"r"}, {}, false};

  return vra::make_vra(acr(), procs, {{J1, m1}, {J2, m2}}, s);
}

Vra epsilon_vra() {
  FiniteAutomaton s;
  StateId s0 = s.add_state("s0");
  s.mark_initial(s0);
  s.mark_final(s0);
  s.normalize();
  return vra::make_vra(acr(), ProceduralAlphabet{}, {}, s);
}

Vra empty_lang_vra() {
  FiniteAutomaton s;
  StateId s0 = s.add_state("s0");
  s.mark_initial(s0);
  s.normalize();
  return vra::make_vra(acr(), ProceduralAlphabet{}, {}, s);
}

namespace {

// Compact single-letter words ("ccrar") read like the running examples;
// anything containing whitespace is parsed as symbol tokens.
std::string spread(const std::string& text) {
  if (text.find(' ') != std::string::npos) return text;
  std::string out;
  for (char ch : text) {
    out += ch;
    out += ' ';
  }
  return out;
}

}  // namespace

vra::Word word(const Vra& v, const std::string& text) {
  return vra::parse_word(spread(text), v.alphabet);
}

vra::Word word(const Vpa& p, const std::string& text) {
  return vra::parse_word(spread(text), p.alphabet);
}

}  // namespace fixtures
