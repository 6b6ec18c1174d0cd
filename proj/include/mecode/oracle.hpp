#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mecode/codebook.hpp"
#include "mecode/cost_model.hpp"
#include "mecode/exact.hpp"

// Brute-force reference implementations. They share no search or counting
// code with the optimizers they validate and are only usable at tiny sizes.
namespace mecode::oracle {

// Every M-subset of the depth-dp tree is enumerated, filtered for prefix
// freedom and scored in exact arithmetic with the optimizer's objective and
// tie-break. At most 30 tree nodes. Throws InfeasibleError when no prefix
// code of M words fits.
Codebook optimal_prefix(const SymbolSource& src, const CostModel& cm, unsigned dp);

// Average cost of the m cheapest of all 2^n words, found by listing every
// word and sorting by cost. n <= 20.
Rational fixed_cost(unsigned n, std::size_t m, const CostModel& cm);

// (ancestor, descendant) index pairs found by testing every node pair of
// the depth-dp tree for a proper prefix relation.
std::vector<std::pair<std::int64_t, std::int64_t>> ancestor_pairs(unsigned dp);

}  // namespace mecode::oracle
