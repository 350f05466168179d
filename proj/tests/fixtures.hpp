#pragma once

#include "vra/model.hpp"
#include "vra/vpa.hpp"

namespace fixtures {

// The running three-module example: Σ̂ = {a}∪{c}∪{r}, Σ_proc = {R,T} with
// f(R) = f(T) = <c,r>.
//   S: s0 -R-> s1            (s0 initial, s1 final)
//   R: r0 -T-> r0, r0 -R-> r1, r0 -a-> r1   (r0 initial, r1 final)
//   T: t0 -R-> t0, t0 -T-> t0               (t0 initial and final)
vra::Vra nested_vra();

// The deterministic VRA with no SPA equivalent:
//   S: s0 -R-> s1 -T-> s2    (s0 initial, s2 final)
//   R: r0 -a-> r1            (r0 initial, r1 final)
//   T: t0 -R-> t0            (t0 initial and final)
vra::Vra det_vra();

// The two-state deterministic VPA: I = F = {q0}, Γ = {g};
//   q0 -a-> q1, q1 -c/g-> q1, q1 -r[g]-> q0, q0 -r[g]-> q0.
vra::Vpa small_vpa();

// Three-module VRA whose start needs J1, but L(A^J1) = ∅ because its final
// is unreachable; L(A^J2) = {ε}. The whole language is empty.
vra::Vra dead_module_vra();

// Single-module VRA accepting exactly {ε}.
vra::Vra epsilon_vra();

// Single-module VRA accepting ∅ (no final states anywhere).
vra::Vra empty_lang_vra();

vra::Word word(const vra::Vra& v, const std::string& spaced);
vra::Word word(const vra::Vpa& p, const std::string& spaced);

}  // namespace fixtures
