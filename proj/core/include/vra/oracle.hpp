#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "vra/model.hpp"
#include "vra/vpa.hpp"

namespace vra::oracle {

struct EnumerationBudget {
  int max_len = 8;
  std::optional<std::size_t> max_words;
  PushdownAlphabet alphabet;
};

/// Yields exactly the well-matched words within the budget, deduplicated, in
/// length-lexicographic order. Throws BudgetExceededError when max_words
/// would be exceeded.
std::vector<Word> enumerate_wm(const EnumerationBudget& budget);
void enumerate_wm(const EnumerationBudget& budget,
                  const std::function<void(const Word&)>& yield);

/// Number of well-matched words of each length 0..max_len, computed by an
/// independent dynamic program over (length, open-depth) lattice paths.
std::vector<std::uint64_t> wm_counts_by_length(const PushdownAlphabet& a, int max_len);

/// Ground-truth membership: BFS over (position, configuration) pairs driven
/// by the one-step semantics, never the relation recursion. Configurations
/// whose stack exceeds stack_bound are pruned; any bound ≥ depth(w) is exact.
bool brute_force_member(const Vra& v, const Word& w, int stack_bound);

using AcceptorRef = std::variant<const Vra*, const Vpa*>;

struct Verdict {
  bool equal = true;
  std::optional<Word> differ_at;
};

/// Compares membership over enumerate_wm; reports the first difference in
/// enumeration order.
Verdict bounded_equiv(AcceptorRef a, AcceptorRef b, const EnumerationBudget& budget);
Verdict bounded_equiv(const Vra& a, const Vra& b, int max_len);
Verdict bounded_equiv(const Vra& a, const Vpa& b, int max_len);
Verdict bounded_equiv(const Vpa& a, const Vpa& b, int max_len);

struct RandomVraParams {
  std::uint64_t seed = 0;
  int min_modules = 1, max_modules = 4;
  int min_states = 1, max_states = 4;
  double min_density = 0.3, max_density = 0.8;
  int min_symbols = 1, max_symbols = 2;  // per alphabet part
};

/// Deterministic small random VRA; identical output for identical params on
/// every platform.
Vra random_vra(const RandomVraParams& params);
Vra random_vra(std::uint64_t seed);

}  // namespace vra::oracle
