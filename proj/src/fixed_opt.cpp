#include "mecode/fixed_opt.hpp"

#include <algorithm>
#include <string>

#include "mecode/error.hpp"

namespace mecode {

namespace {

void check_feasible(unsigned n, std::size_t m) {
  if (m < 2) throw ValidationError("need at least 2 symbols", "m");
  if (n == 0) throw InfeasibleError("code length must be >= 1");
  if (n < 64 && (std::uint64_t{1} << n) < m) {
    throw InfeasibleError("2^" + std::to_string(n) + " < " + std::to_string(m) +
                          ": not enough codewords of length " + std::to_string(n));
  }
}

// Cost of an n-bit word of weight w.
Rational word_cost(unsigned n, unsigned w, const Rational& b0, const Rational& b1) {
  return Rational(n - w) * b0 + Rational(w) * b1;
}

}  // namespace

unsigned l_min(unsigned n, std::size_t m) {
  check_feasible(n, m);
  BigInt covered = 0;
  for (unsigned l = 0; l <= n; ++l) {
    covered += binomial(n, l);
    if (covered >= m) return l;
  }
  throw InfeasibleError("not enough codewords");  // unreachable after check_feasible
}

std::vector<std::size_t> weight_profile(unsigned n, std::size_t m) {
  const unsigned l = l_min(n, m);
  std::vector<std::size_t> taken;
  std::size_t remaining = m;
  for (unsigned w = 0; w <= l; ++w) {
    const BigInt c = binomial(n, w);
    const std::size_t take = c >= remaining ? remaining : c.convert_to<std::size_t>();
    taken.push_back(take);
    remaining -= take;
  }
  return taken;
}

Rational fixed_cost_exact(unsigned n, std::size_t m, const CostModel& cm) {
  const unsigned l = l_min(n, m);
  BigInt weighted = 0;  // sum_{i<l} i*C(n,i)
  BigInt below = 0;     // sum_{k<l} C(n,k)
  for (unsigned i = 0; i < l; ++i) {
    const BigInt c = binomial(n, i);
    weighted += c * i;
    below += c;
  }
  const BigInt ones = weighted + BigInt(l) * (BigInt(m) - below);
  const Rational b0 = to_rational(cm.beta0());
  const Rational db = to_rational(cm.beta1()) - b0;
  return Rational(n) * b0 + db * Rational(ones, BigInt(m));
}

double fixed_cost(unsigned n, std::size_t m, const CostModel& cm) {
  return to_double(fixed_cost_exact(n, m, cm));
}

Rational fixed_assignment_cost_exact(unsigned n, const SymbolSource& src, const CostModel& cm) {
  if (src.is_uniform()) return fixed_cost_exact(n, src.m(), cm);
  const auto profile = weight_profile(n, src.m());
  const Rational b0 = to_rational(cm.beta0());
  const Rational b1 = to_rational(cm.beta1());
  const auto probs = src.sorted_probs();
  // Walk probabilities from largest to smallest while weights ascend.
  std::size_t slot = src.m();
  Rational total = 0;
  for (unsigned w = 0; w < profile.size(); ++w) {
    Rational mass = 0;
    for (std::size_t k = 0; k < profile[w]; ++k) mass += to_rational(probs[--slot]);
    total += mass * word_cost(n, w, b0, b1);
  }
  return total;
}

std::vector<Codeword> cheapest_words(unsigned n, std::size_t m) {
  const auto profile = weight_profile(n, m);
  std::vector<Codeword> words;
  words.reserve(m);
  for (unsigned w = 0; w < profile.size(); ++w) {
    // Set-bit positions (LSB = 0), ascending. Colex successor gives
    // increasing numeric value.
    std::vector<unsigned> pos(w);
    for (unsigned i = 0; i < w; ++i) pos[i] = i;
    for (std::size_t k = 0; k < profile[w]; ++k) {
      std::string bits(n, '0');
      for (unsigned p : pos) bits[n - 1 - p] = '1';
      words.push_back(Codeword::from_string(bits));

      unsigned i = 0;
      while (i < w && (i + 1 == w ? pos[i] + 1 >= n : pos[i] + 1 == pos[i + 1])) ++i;
      if (i == w) break;
      ++pos[i];
      for (unsigned j = 0; j < i; ++j) pos[j] = j;
    }
  }
  return words;
}

Codebook fixed_codebook(unsigned n, const SymbolSource& src) {
  auto words = cheapest_words(n, src.m());
  std::vector<Codeword> entries(src.m(), words.front());
  const auto order = src.by_decreasing_probability();
  for (std::size_t k = 0; k < order.size(); ++k) entries[order[k]] = words[k];
  return Codebook::create(CodebookKind::fixed, std::move(entries));
}

unsigned min_fixed_length(std::size_t m) {
  if (m < 2) throw ValidationError("need at least 2 symbols", "m");
  unsigned n = 0;
  while ((std::size_t{1} << n) < m) ++n;
  return n;
}

FixedResult optimize_fixed(const SymbolSource& src, const CostModel& cm,
                           std::optional<unsigned> n_max) {
  const std::size_t m = src.m();
  FixedScan scan;
  scan.n_min = min_fixed_length(m);
  scan.n_max = n_max.value_or(static_cast<unsigned>(std::max<std::size_t>(m - 1, scan.n_min)));
  if (scan.n_max < scan.n_min) {
    throw InfeasibleError("n_max " + std::to_string(scan.n_max) + " is below ceil(log2 M) = " +
                          std::to_string(scan.n_min));
  }

  std::size_t best = 0;
  for (unsigned n = scan.n_min; n <= scan.n_max; ++n) {
    scan.lmin.push_back(l_min(n, m));
    scan.exact.push_back(fixed_assignment_cost_exact(n, src, cm));
    scan.costs.push_back(to_double(scan.exact.back()));
    if (scan.exact.back() < scan.exact[best]) best = scan.exact.size() - 1;
  }
  scan.n_opt = scan.n_min + static_cast<unsigned>(best);
  return FixedResult{fixed_codebook(scan.n_opt, src), std::move(scan)};
}

FixedResult optimize_fixed(std::size_t m, const CostModel& cm, std::optional<unsigned> n_max) {
  return optimize_fixed(SymbolSource::uniform(m), cm, n_max);
}

}  // namespace mecode
