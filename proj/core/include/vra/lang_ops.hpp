#pragma once

#include <vector>

#include "vra/model.hpp"

namespace vra {

/// Pair symbol introduced by the intersection construction; only
/// ⟨c,r⟩-compatible pairs are materialized. left/right name the operands'
/// original symbols (before any collision renaming).
struct ProcPairSymbol {
  Symbol left;
  Symbol right;
  Symbol call;
  Symbol ret;
  Symbol symbol;  // the synthesized combined symbol
};

struct IntersectResult {
  Vra vra;
  std::vector<ProcPairSymbol> pairs;
};

/// Intersection with the pair-symbol bookkeeping exposed; used by the
/// codeterminism check to map product modules back to operand symbols.
IntersectResult vra_intersect_detailed(const Vra& a, const Vra& b);

/// L(a)·L(b). Copies both module families; the start accepts the
/// concatenation of the starts' regular languages. Size O(|a|+|b|).
Vra vra_concat(const Vra& a, const Vra& b);

/// L(a)*. Size O(|a|).
Vra vra_star(const Vra& a);

/// L(a) ∪ L(b). Size O(|a|+|b|).
Vra vra_union(const Vra& a, const Vra& b);

/// L(a) ∩ L(b) via pairwise module products over compatible pair symbols.
/// Size O(|a|·|b|).
Vra vra_intersect(const Vra& a, const Vra& b);

/// WM(Σ̂) \ L(a). When the input already has the regular-partition normal
/// form the start's finals are flipped in place; otherwise the
/// codeterministic-complete construction runs first.
Vra vra_complement(const Vra& a);

/// Codeterminism-preserving variants: inputs must be codeterministic and
/// complete with complete-DFA modules (checked structurally); outputs keep
/// those properties.
Vra vra_concat_cc(const Vra& a, const Vra& b);
Vra vra_star_cc(const Vra& a);
Vra vra_union_cc(const Vra& a, const Vra& b);
Vra vra_intersect_cc(const Vra& a, const Vra& b);

}  // namespace vra
