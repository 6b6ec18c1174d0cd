#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mecode/codebook.hpp"
#include "mecode/cost_model.hpp"
#include "mecode/exact.hpp"

namespace mecode {

// Smallest l such that the n-bit words of weight <= l number at least m.
// Throws InfeasibleError when 2^n < m.
unsigned l_min(unsigned n, std::size_t m);

// Number of words taken from each weight class 0..l_min(n, m) when the m
// lowest-weight n-bit words are selected.
std::vector<std::size_t> weight_profile(unsigned n, std::size_t m);

// Average cost of the m cheapest n-bit words under a uniform source:
//   n*beta0 + (dbeta/m) * [sum_{i<l} i*C(n,i) + l*(m - sum_{k<l} C(n,k))],
// with l = l_min(n, m). Evaluated exactly.
Rational fixed_cost_exact(unsigned n, std::size_t m, const CostModel& cm);
double fixed_cost(unsigned n, std::size_t m, const CostModel& cm);

// Expected cost for an arbitrary source when the m cheapest n-bit words are
// paired cheapest-to-most-probable. Uniform sources use exact 1/m weights,
// so this agrees with fixed_cost_exact for them.
Rational fixed_assignment_cost_exact(unsigned n, const SymbolSource& src, const CostModel& cm);

// The m n-bit words of smallest weight, ordered by (weight, numeric value).
std::vector<Codeword> cheapest_words(unsigned n, std::size_t m);

// Length-n codebook pairing cheapest_words(n, m) with symbols by decreasing
// probability.
Codebook fixed_codebook(unsigned n, const SymbolSource& src);

struct FixedScan {
  unsigned n_min = 0;
  unsigned n_max = 0;
  std::vector<unsigned> lmin;     // one per n in [n_min, n_max]
  std::vector<Rational> exact;    // expected cost per n
  std::vector<double> costs;      // exact rendered to double
  unsigned n_opt = 0;

  double cost_at(unsigned n) const { return costs.at(n - n_min); }
  unsigned lmin_at(unsigned n) const { return lmin.at(n - n_min); }
};

struct FixedResult {
  Codebook codebook;
  FixedScan scan;
};

// ceil(log2 m).
unsigned min_fixed_length(std::size_t m);

// Scans n in [ceil(log2 m), n_max] (default m-1) and returns the cheapest
// length; equal costs resolve to the shorter length.
FixedResult optimize_fixed(const SymbolSource& src, const CostModel& cm,
                           std::optional<unsigned> n_max = std::nullopt);
FixedResult optimize_fixed(std::size_t m, const CostModel& cm,
                           std::optional<unsigned> n_max = std::nullopt);

}  // namespace mecode
