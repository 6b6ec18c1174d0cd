#include "mecode/metrics.hpp"

#include <bit>
#include <cmath>
#include <optional>

#include "mecode/error.hpp"
#include "mecode/fixed_opt.hpp"

namespace mecode {

namespace {

void check_sizes(const SymbolSource& src, const Codebook& cb) {
  if (src.m() != cb.m()) {
    throw ValidationError("codebook has " + std::to_string(cb.m()) + " entries, source has " +
                              std::to_string(src.m()) + " symbols",
                          "codebook");
  }
}

double weight(const SymbolSource& src, std::size_t i) {
  return src.is_uniform() ? 1.0 / static_cast<double>(src.m()) : src.prob(i);
}

template <typename F>
double expectation(const SymbolSource& src, const Codebook& cb, F&& f) {
  check_sizes(src, cb);
  double total = 0.0;
  for (std::size_t i = 0; i < cb.m(); ++i) total += weight(src, i) * f(cb[i]);
  return total;
}

}  // namespace

double source_entropy(const SymbolSource& src) {
  double h = 0.0;
  for (double p : src.probs()) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

double average_length(const SymbolSource& src, const Codebook& cb) {
  return expectation(src, cb, [](const Codeword& c) { return static_cast<double>(c.size()); });
}

double average_duration(const SymbolSource& src, const Codebook& cb, const CostModel& cm) {
  return expectation(src, cb, [&](const Codeword& c) { return codeword_duration(c, cm); });
}

double rate_reduction(const SymbolSource& src, const Codebook& cb, const CostModel& cm) {
  const double t_src = (cm.t0() + cm.t1()) / 2.0 * source_entropy(src);
  return average_duration(src, cb, cm) / t_src;
}

double average_cost(const SymbolSource& src, const Codebook& cb, const CostModel& cm) {
  return to_double(average_cost_exact(src, cb, cm));
}

Rational average_cost_exact(const SymbolSource& src, const Codebook& cb, const CostModel& cm) {
  check_sizes(src, cb);
  const Rational b0 = to_rational(cm.beta0());
  const Rational b1 = to_rational(cm.beta1());
  Rational total = 0;
  for (std::size_t i = 0; i < cb.m(); ++i) {
    const Rational p = src.is_uniform() ? Rational(1, src.m()) : to_rational(src.prob(i));
    total += p * (Rational(cb[i].n0()) * b0 + Rational(cb[i].n1()) * b1);
  }
  return total;
}

double uncoded_cost(const SymbolSource& src, const CostModel& cm) {
  const std::size_t m = src.m();
  if (src.is_uniform()) {
    return (cm.beta0() + cm.beta1()) / 2.0 * std::log2(static_cast<double>(m));
  }
  const unsigned bits = min_fixed_length(m);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto ones = static_cast<unsigned>(std::popcount(static_cast<unsigned long long>(i)));
    total += src.prob(i) * ((bits - ones) * cm.beta0() + ones * cm.beta1());
  }
  return total;
}

namespace {

// Exact baseline when it is rational: always for the binary-index baseline,
// and for uniform sources only when log2(M) is an integer.
std::optional<Rational> uncoded_cost_exact(const SymbolSource& src, const CostModel& cm) {
  const std::size_t m = src.m();
  const Rational b0 = to_rational(cm.beta0());
  const Rational b1 = to_rational(cm.beta1());
  if (src.is_uniform()) {
    if (!std::has_single_bit(m)) return std::nullopt;
    return (b0 + b1) / 2 * Rational(std::bit_width(m) - 1);
  }
  const unsigned bits = min_fixed_length(m);
  Rational total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto ones = static_cast<unsigned>(std::popcount(static_cast<unsigned long long>(i)));
    total += to_rational(src.prob(i)) * (Rational(bits - ones) * b0 + Rational(ones) * b1);
  }
  return total;
}

}  // namespace

double energy_saving(const SymbolSource& src, const Codebook& cb, const CostModel& cm) {
  const Rational cost = average_cost_exact(src, cb, cm);
  if (auto base = uncoded_cost_exact(src, cm)) return to_double(1 - cost / *base);
  return 1.0 - to_double(cost) / uncoded_cost(src, cm);
}

double epsilon_max_fixed(std::size_t m) {
  if (m < 2) throw ValidationError("need at least 2 symbols", "m");
  const double md = static_cast<double>(m);
  return 1.0 - 2.0 * (md - 1.0) / (md * std::log2(md));
}

double epsilon_max_variable(std::size_t m) { return epsilon_max_fixed(m); }

double unary_code_epsilon(std::size_t m, const Gamma& gamma) {
  if (gamma.is_infinite()) return epsilon_max_variable(m);
  const double md = static_cast<double>(m);
  const double g = gamma.value();
  return 1.0 - (2.0 * g * (md - 1.0) + md * (md - 1.0)) / (md * (1.0 + g) * std::log2(md));
}

CodebookMetrics evaluate(const SymbolSource& src, const Codebook& cb, const CostModel& cm) {
  CodebookMetrics out;
  out.l_src = source_entropy(src);
  out.t_src = (cm.t0() + cm.t1()) / 2.0 * out.l_src;
  out.t_code = average_duration(src, cb, cm);
  out.r_src = 1.0 / out.t_src;
  out.r_code = 1.0 / out.t_code;
  out.eta = out.t_code / out.t_src;
  out.avg_length = average_length(src, cb);
  out.beta_code = average_cost(src, cb, cm);
  out.beta_src = uncoded_cost(src, cm);
  out.epsilon = energy_saving(src, cb, cm);
  return out;
}

}  // namespace mecode
