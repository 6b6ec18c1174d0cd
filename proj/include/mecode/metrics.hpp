#pragma once

#include <cstddef>

#include "mecode/codebook.hpp"
#include "mecode/cost_model.hpp"
#include "mecode/exact.hpp"

namespace mecode {

struct CodebookMetrics {
  double l_src = 0;      // source entropy, bits/symbol
  double t_src = 0;      // uncoded symbol duration, (t0+t1)/2 * l_src
  double t_code = 0;     // expected codeword duration
  double r_src = 0;      // 1 / t_src
  double r_code = 0;     // 1 / t_code
  double eta = 0;        // r_src / r_code
  double avg_length = 0; // expected codeword length, bits
  double beta_code = 0;  // expected codeword cost
  double beta_src = 0;   // uncoded baseline cost
  double epsilon = 0;    // 1 - beta_code / beta_src
};

// -sum p log2 p with 0 log 0 = 0.
double source_entropy(const SymbolSource& src);

double average_length(const SymbolSource& src, const Codebook& cb);
double average_duration(const SymbolSource& src, const Codebook& cb, const CostModel& cm);

// T_code / T_src: how much longer the coded stream takes than raw source bits.
double rate_reduction(const SymbolSource& src, const Codebook& cb, const CostModel& cm);

// sum_i p_i f(c_i). Uniform sources are weighted by exactly 1/M.
double average_cost(const SymbolSource& src, const Codebook& cb, const CostModel& cm);
Rational average_cost_exact(const SymbolSource& src, const Codebook& cb, const CostModel& cm);

// Cost per symbol of sending raw source bits.
//
// Uniform source: (beta0 + beta1)/2 * log2 M, i.e. half ones, half zeros.
// Otherwise each symbol i is sent as its ceil(log2 M)-bit binary index and
// the baseline is sum_i p_i (N0(i) beta0 + N1(i) beta1).
double uncoded_cost(const SymbolSource& src, const CostModel& cm);

// 1 - average_cost / uncoded_cost.
double energy_saving(const SymbolSource& src, const Codebook& cb, const CostModel& cm);

// gamma -> infinity saving of the optimal fixed-length code:
// 1 - 2(M-1) / (M log2 M).
double epsilon_max_fixed(std::size_t m);
// Same limit reached by the unary prefix code.
double epsilon_max_variable(std::size_t m);
// Saving of the unary prefix code 1, 01, ..., 0^(M-1) at finite gamma under
// a uniform source: 1 - (2 gamma (M-1) + M(M-1)) / (M (1 + gamma) log2 M).
double unary_code_epsilon(std::size_t m, const Gamma& gamma);

CodebookMetrics evaluate(const SymbolSource& src, const Codebook& cb, const CostModel& cm);

}  // namespace mecode
