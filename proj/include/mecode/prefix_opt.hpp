#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mecode/codebook.hpp"
#include "mecode/cost_model.hpp"
#include "mecode/error.hpp"

namespace mecode {

struct PrefixOptions {
  // Code-tree depth. Defaults to min(M-1, 24); M-1 when gamma is infinite.
  std::optional<unsigned> dp;
  // Optional cap on the rate-reduction factor T_code / T_src.
  std::optional<double> eta_max;
  std::uint64_t node_budget = 50'000'000;
};

inline PrefixOptions depth_options(unsigned dp) {
  PrefixOptions o;
  o.dp = dp;
  return o;
}

struct PrefixResult {
  Codebook codebook;
  unsigned dp = 0;
  double cost = 0.0;        // expected cost, cheapest word to most probable symbol
  std::uint64_t nodes = 0;  // search nodes expanded
  bool closed_form = false; // infinite-gamma construction, no search
};

// Search stopped at the node budget. incumbent() is the best codebook found
// so far, which need not be optimal.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t nodes, std::optional<PrefixResult> incumbent);
  const std::optional<PrefixResult>& incumbent() const noexcept { return incumbent_; }

 private:
  std::optional<PrefixResult> incumbent_;
};

unsigned default_tree_depth(std::size_t m);

// Expected cost of a word set when the cheapest words go to the most
// probable symbols.
double sorted_pairing_cost(std::vector<double> costs, const SymbolSource& src);

// Codebook pairing words with symbols: words ordered by (cost, length,
// lexicographic) go to symbols by decreasing probability.
Codebook assign_by_cost(std::vector<Codeword> words, const SymbolSource& src,
                        const CostModel& cm, CodebookKind kind = CodebookKind::prefix);

// 1, 01, 001, ..., 0^(M-2)1, 0^(M-1): optimal whenever bit-0 is free.
Codebook unary_codebook(const SymbolSource& src, const CostModel& cm);

// Minimum expected-cost prefix code with words no longer than dp.
//
// Exact branch-and-bound over full code trees in depth-first node order.
// Among equal-cost optima the one with the lexicographically smallest
// sorted word list is returned.
PrefixResult optimize_prefix(const SymbolSource& src, const CostModel& cm,
                             const PrefixOptions& options = {});

}  // namespace mecode
