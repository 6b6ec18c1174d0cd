#include "mecode/oracle.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "mecode/error.hpp"
#include "mecode/exact.hpp"
#include "mecode/prefix_opt.hpp"
#include "mecode/prefix_tree.hpp"

namespace mecode::oracle {

namespace {

constexpr std::int64_t kMaxOracleNodes = 30;

// Exact expected cost of words given in tree order.
Rational exact_pairing_cost(const std::vector<const Codeword*>& words, const SymbolSource& src,
                            const Rational& b0, const Rational& b1) {
  std::vector<Rational> costs;
  costs.reserve(words.size());
  for (const auto* w : words) costs.push_back(Rational(w->n0()) * b0 + Rational(w->n1()) * b1);
  std::sort(costs.begin(), costs.end());
  Rational total = 0;
  const auto sorted = src.sorted_probs();
  const std::size_t m = src.m();
  for (std::size_t j = 0; j < m; ++j) {
    const Rational p = src.is_uniform() ? Rational(1, m) : to_rational(sorted[m - 1 - j]);
    total += p * costs[j];
  }
  return total;
}

}  // namespace

Codebook optimal_prefix(const SymbolSource& src, const CostModel& cm, unsigned dp) {
  const PrefixTree tree(dp, cm);
  const std::int64_t q = tree.size();
  if (q > kMaxOracleNodes) {
    throw ValidationError("oracle limited to trees of at most 30 nodes", "dp");
  }
  const std::size_t m = src.m();
  std::vector<Codeword> nodes;
  for (std::int64_t i = 0; i < q; ++i) nodes.push_back(tree.word(i));

  const Rational b0 = to_rational(cm.beta0());
  const Rational b1 = to_rational(cm.beta1());

  std::optional<Rational> best_cost;
  std::vector<std::size_t> best;

  if (static_cast<std::int64_t>(m) <= q) {
    // Every M-subset of node indices, in lexicographic index order.
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    std::vector<Codeword> words;
    std::vector<const Codeword*> ptrs;
    for (;;) {
      words.clear();
      for (auto i : idx) words.push_back(nodes[i]);
      if (is_prefix_free(words)) {
        ptrs.clear();
        for (const auto& w : words) ptrs.push_back(&w);
        Rational cost = exact_pairing_cost(ptrs, src, b0, b1);
        // Node order is lexicographic word order, so on a tie the earlier
        // subset has the smaller sorted word list.
        if (!best_cost || cost < *best_cost) {
          best_cost = std::move(cost);
          best = idx;
        }
      }
      std::size_t i = m;
      while (i > 0 && idx[i - 1] == static_cast<std::size_t>(q) - m + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (!best_cost) {
    throw InfeasibleError("no prefix code of " + std::to_string(m) + " words fits in depth " +
                          std::to_string(dp));
  }
  std::vector<Codeword> chosen;
  for (auto i : best) chosen.push_back(nodes[i]);
  return assign_by_cost(std::move(chosen), src, cm);
}

Rational fixed_cost(unsigned n, std::size_t m, const CostModel& cm) {
  if (n < 1 || n > 20) throw ValidationError("brute force limited to 1 <= n <= 20", "n");
  const std::uint64_t total = std::uint64_t{1} << n;
  if (m < 1 || m > total) throw InfeasibleError("need 1 <= m <= 2^n");
  const Rational b0 = to_rational(cm.beta0());
  const Rational b1 = to_rational(cm.beta1());
  std::vector<Rational> costs;
  costs.reserve(total);
  for (std::uint64_t word = 0; word < total; ++word) {
    unsigned ones = 0;
    for (unsigned b = 0; b < n; ++b) ones += (word >> b) & 1u;
    costs.push_back(Rational(n - ones) * b0 + Rational(ones) * b1);
  }
  std::sort(costs.begin(), costs.end());
  Rational sum = 0;
  for (std::size_t i = 0; i < m; ++i) sum += costs[i];
  return sum / Rational(m);
}

std::vector<std::pair<std::int64_t, std::int64_t>> ancestor_pairs(unsigned dp) {
  const PrefixTree tree(dp, CostModel::create(1, 1, 1, 1));
  std::vector<Codeword> nodes;
  for (std::int64_t i = 0; i < tree.size(); ++i) nodes.push_back(tree.word(i));
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t i = 0; i < tree.size(); ++i) {
    for (std::int64_t j = 0; j < tree.size(); ++j) {
      if (i != j && nodes[i].is_prefix_of(nodes[j])) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

}  // namespace mecode::oracle
