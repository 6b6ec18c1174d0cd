#include "mecode/prefix_opt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "mecode/exact.hpp"
#include "mecode/fixed_opt.hpp"
#include "mecode/metrics.hpp"
#include "mecode/prefix_tree.hpp"

namespace mecode {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-12;
constexpr unsigned kDefaultDepthCap = 24;

double tol(double x) { return kRelTol * std::abs(x); }

std::vector<double> probs_descending(const SymbolSource& src) {
  auto sorted = src.sorted_probs();
  if (src.is_uniform()) return std::vector<double>(src.m(), 1.0 / static_cast<double>(src.m()));
  return {sorted.rbegin(), sorted.rend()};
}

// Cost of a word set as (number of zeros, number of ones). For a uniform
// source the objective is linear in these counts, so comparing them against
// the exact binary values of beta0 and beta1 gives an exact ordering.
struct Units {
  std::int64_t n0 = 0;
  std::int64_t n1 = 0;
  Units operator+(Units o) const { return {n0 + o.n0, n1 + o.n1}; }
  Units scaled(std::int64_t k) const { return {k * n0, k * n1}; }
};

class UnitOrder {
 public:
  explicit UnitOrder(const CostModel& cm) {
    split(cm.beta0(), m0_, e0_);
    split(cm.beta1(), m1_, e1_);
  }

  // Sign of a - b.
  int compare(Units a, Units b) const {
    const std::int64_t x = a.n0 - b.n0;
    const std::int64_t y = a.n1 - b.n1;
    if (m0_ == 0 || x == 0) return sign(y) * (m1_ == 0 ? 0 : 1);
    if (m1_ == 0 || y == 0) return sign(x);
    // Beyond a 40 bit exponent gap the larger term dominates any count that
    // fits the tree.
    if (e1_ >= e0_) {
      const int s = e1_ - e0_;
      if (s > 40) return sign(y);
      const __int128 v = static_cast<__int128>(x) * m0_ + (static_cast<__int128>(y) * m1_ << s);
      return v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
    const int s = e0_ - e1_;
    if (s > 40) return sign(x);
    const __int128 v = (static_cast<__int128>(x) * m0_ << s) + static_cast<__int128>(y) * m1_;
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }

  bool less(Units a, Units b) const { return compare(a, b) < 0; }

 private:
  static int sign(std::int64_t v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

  static void split(double b, std::int64_t& mant, int& exp) {
    if (b == 0.0) {
      mant = 0;
      exp = 0;
      return;
    }
    const double f = std::frexp(b, &exp);
    mant = static_cast<std::int64_t>(std::ldexp(f, 53));
    exp -= 53;
  }

  std::int64_t m0_ = 0, m1_ = 0;
  int e0_ = 0, e1_ = 0;
};

struct OptUnits {
  bool ok = false;
  Units u;
};

struct OpenNode {
  std::string bits;
  Units units;
  double cost;
  double duration;
  unsigned height;  // levels available including this node: dp - |bits| + 1
};

class BranchAndBound {
 public:
  BranchAndBound(const SymbolSource& src, const CostModel& cm, unsigned dp,
                 const PrefixOptions& options)
      : src_(src), cm_(cm), dp_(dp), m_(src.m()), budget_(options.node_budget),
        uniform_(src.is_uniform()), order_(cm), p_desc_(probs_descending(src)) {
    build_table();
    if (options.eta_max) {
      duration_limit_ = *options.eta_max * (cm.t0() + cm.t1()) / 2.0 * source_entropy(src);
    }
  }

  PrefixResult run() {
    auto heuristic = table_solution();
    if (heuristic && satisfies_rate(*heuristic)) {
      upper_bound_ = sorted_pairing_cost(costs_of(*heuristic), src_);
      upper_units_ = {true, units_of(*heuristic)};
      heuristic_words_ = std::move(*heuristic);
    }

    const double c0 = cm_.beta0();
    const double c1 = cm_.beta1();
    open_.push_back({"1", {0, 1}, c1, cm_.t1(), dp_});
    open_.push_back({"0", {1, 0}, c0, cm_.t0(), dp_});
    try {
      search();
    } catch (const BudgetExceeded&) {
      std::optional<PrefixResult> inc;
      if (have_best_) {
        inc = finish(best_words_, best_cost_);
      } else if (!heuristic_words_.empty()) {
        inc = finish(heuristic_words_, upper_bound_);
      }
      throw BudgetExceeded(nodes_, std::move(inc));
    }
    if (!have_best_) {
      throw InfeasibleError("no prefix code of " + std::to_string(m_) +
                            " words satisfies the rate constraint at depth " +
                            std::to_string(dp_));
    }
    return finish(best_words_, best_cost_);
  }

 private:
  void build_table() {
    // within_[h][k]: cheapest extra cost of k prefix-free nodes inside a
    // half-tree of height h, measured relative to k copies of its root.
    within_units_.assign(dp_ + 2, std::vector<OptUnits>(m_ + 1));
    within_.assign(dp_ + 2, std::vector<double>(m_ + 1, kInf));
    for (unsigned h = 0; h <= dp_ + 1; ++h) within_units_[h][0] = {true, {}};
    for (unsigned h = 1; h <= dp_ + 1; ++h) {
      within_units_[h][1] = {true, {}};
      for (std::size_t k = 2; k <= m_; ++k) {
        OptUnits best;
        for (std::size_t k0 = 0; k0 <= k; ++k0) {
          const OptUnits c = split_cost(h, k0, k - k0);
          if (c.ok && (!best.ok || order_.less(c.u, best.u))) best = c;
        }
        within_units_[h][k] = best;
      }
    }
    for (unsigned h = 0; h <= dp_ + 1; ++h) {
      for (std::size_t k = 0; k <= m_; ++k) {
        if (within_units_[h][k].ok) within_[h][k] = value(within_units_[h][k].u);
      }
    }
  }

  double value(Units u) const {
    return static_cast<double>(u.n0) * cm_.beta0() + static_cast<double>(u.n1) * cm_.beta1();
  }

  // Cost of sending k0 words down the 0-branch and k1 down the 1-branch of a
  // node with height h.
  OptUnits split_cost(unsigned h, std::size_t k0, std::size_t k1) const {
    OptUnits total{true, {}};
    if (k0 > 0) {
      const auto& w = within_units_[h - 1][k0];
      if (!w.ok) return {};
      total.u = total.u + Units{static_cast<std::int64_t>(k0), 0} + w.u;
    }
    if (k1 > 0) {
      const auto& w = within_units_[h - 1][k1];
      if (!w.ok) return {};
      total.u = total.u + Units{0, static_cast<std::int64_t>(k1)} + w.u;
    }
    return total;
  }

  // Optimal code for a uniform source, read back from the table. Used as the
  // initial upper bound.
  std::optional<std::vector<Codeword>> table_solution() const {
    if (!within_units_[dp_ + 1][m_].ok) return std::nullopt;
    std::vector<Codeword> words;
    expand("", dp_ + 1, m_, words);
    return words;
  }

  void expand(const std::string& bits, unsigned h, std::size_t k,
              std::vector<Codeword>& out) const {
    if (k == 1 && !bits.empty()) {
      out.push_back(Codeword::from_string(bits));
      return;
    }
    std::size_t best_k0 = 0;
    OptUnits best;
    for (std::size_t k0 = 0; k0 <= k; ++k0) {
      const OptUnits c = split_cost(h, k0, k - k0);
      if (c.ok && (!best.ok || order_.less(c.u, best.u))) {
        best = c;
        best_k0 = k0;
      }
    }
    if (best_k0 > 0) expand(bits + '0', h - 1, best_k0, out);
    if (k - best_k0 > 0) expand(bits + '1', h - 1, k - best_k0, out);
  }

  std::vector<double> costs_of(const std::vector<Codeword>& words) const {
    std::vector<double> c;
    for (const auto& w : words) c.push_back(codeword_cost(w, cm_));
    return c;
  }

  static Units units_of(const std::vector<Codeword>& words) {
    Units u;
    for (const auto& w : words) {
      u = u + Units{static_cast<std::int64_t>(w.n0()), static_cast<std::int64_t>(w.n1())};
    }
    return u;
  }

  bool satisfies_rate(const std::vector<Codeword>& words) const {
    if (!duration_limit_) return true;
    const auto cb = assign_by_cost(words, src_, cm_);
    return average_duration(src_, cb, cm_) <= *duration_limit_ * (1.0 + kRelTol);
  }

  PrefixResult finish(const std::vector<Codeword>& words, double cost) const {
    return PrefixResult{assign_by_cost(words, src_, cm_), dp_, cost, nodes_, false};
  }

  // Lower bound on the expected cost of every completion of the current
  // partial tree.
  double bound() const {
    const std::size_t need = m_ - committed_sorted_.size();
    // Cheapest total cost of j words drawn from the open subtrees: `exact`
    // requires every open node to contribute, `loose` does not.
    std::vector<double> exact(need + 1, kInf), loose(need + 1, kInf);
    exact[0] = loose[0] = 0.0;
    std::vector<double> next_exact(need + 1), next_loose(need + 1);
    for (const auto& v : open_) {
      std::fill(next_exact.begin(), next_exact.end(), kInf);
      std::fill(next_loose.begin(), next_loose.end(), kInf);
      const auto& table = within_[v.height];
      for (std::size_t a = 0; a <= need; ++a) {
        if (!std::isfinite(loose[a])) continue;
        for (std::size_t k = 0; a + k <= need; ++k) {
          const double hv = k == 0 ? 0.0 : static_cast<double>(k) * v.cost + table[k];
          if (!std::isfinite(hv)) break;
          next_loose[a + k] = std::min(next_loose[a + k], loose[a] + hv);
          if (k >= 1 && std::isfinite(exact[a])) {
            next_exact[a + k] = std::min(next_exact[a + k], exact[a] + hv);
          }
        }
      }
      exact.swap(next_exact);
      loose.swap(next_loose);
    }
    if (!std::isfinite(exact[need])) return kInf;

    const std::size_t c = committed_sorted_.size();
    std::vector<double> prefix(c + 1, 0.0);
    for (std::size_t i = 0; i < c; ++i) prefix[i + 1] = prefix[i] + committed_sorted_[i];

    if (src_.is_uniform()) return (prefix[c] + exact[need]) * p_desc_[0];

    // sum_j p_j c_(j) = sum_t (p_{t-1} - p_t) * (sum of the t cheapest words).
    double lb = 0.0;
    for (std::size_t t = 1; t <= m_; ++t) {
      const double w = p_desc_[t - 1] - (t < m_ ? p_desc_[t] : 0.0);
      if (w <= 0.0) continue;
      double s;
      if (t == m_) {
        s = prefix[c] + exact[need];
      } else {
        s = kInf;
        const std::size_t lo = t > need ? t - need : 0;
        for (std::size_t a = lo; a <= std::min(t, c); ++a) s = std::min(s, prefix[a] + loose[t - a]);
      }
      lb += w * s;
    }
    return lb;
  }

  // Uniform sources: least total (zeros, ones) of any completion, compared
  // exactly. Same convolution as bound() without the loose part.
  OptUnits bound_units() const {
    const std::size_t need = m_ - committed_words_.size();
    std::vector<OptUnits> exact(need + 1), next(need + 1);
    exact[0] = {true, {}};
    for (const auto& v : open_) {
      std::fill(next.begin(), next.end(), OptUnits{});
      const auto& table = within_units_[v.height];
      for (std::size_t a = 0; a < need; ++a) {
        if (!exact[a].ok) continue;
        for (std::size_t k = 1; a + k <= need; ++k) {
          if (!table[k].ok) break;
          const Units c = exact[a].u + v.units.scaled(static_cast<std::int64_t>(k)) + table[k].u;
          auto& slot = next[a + k];
          if (!slot.ok || order_.less(c, slot.u)) slot = {true, c};
        }
      }
      exact.swap(next);
    }
    if (!exact[need].ok) return {};
    return {true, committed_units_ + exact[need].u};
  }

  // Lower bound on the expected duration of every completion.
  double duration_bound() const {
    const std::size_t need = m_ - committed_sorted_.size();
    std::vector<double> d = committed_durations_;
    double cheapest_extra = kInf;
    for (const auto& v : open_) {
      d.push_back(v.duration);
      if (v.height >= 2) cheapest_extra = std::min(cheapest_extra, v.duration);
    }
    if (need > open_.size()) {
      cheapest_extra += std::min(cm_.t0(), cm_.t1());
      d.insert(d.end(), need - open_.size(), cheapest_extra);
    }
    std::sort(d.begin(), d.end());
    double total = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) total += p_desc_[j] * d[j];
    return total;
  }

  void search() {
    if (++nodes_ > budget_) throw BudgetExceeded(nodes_, std::nullopt);

    if (uniform_) {
      const OptUnits lb = bound_units();
      if (!lb.ok) return;
      // Anything found later is lexicographically larger, so it must be
      // strictly cheaper to replace the incumbent.
      if (have_best_ && !order_.less(lb.u, best_units_)) return;
      if (!have_best_ && upper_units_.ok && order_.less(upper_units_.u, lb.u)) return;
    } else if (const double lb = bound(); !std::isfinite(lb)) {
      return;
    } else if (have_best_) {
      // Anything found later is lexicographically larger: it must be strictly
      // cheaper. Two codes can tie in floating point yet differ exactly, so
      // near-ties stay open and record() decides.
      if (lb > best_cost_ + tol(best_cost_)) return;
    } else if (lb > upper_bound_ + tol(upper_bound_)) {
      return;
    }
    if (duration_limit_ && duration_bound() > *duration_limit_ * (1.0 + kRelTol)) return;

    if (open_.empty()) {
      record();
      return;
    }

    const OpenNode node = open_.back();
    open_.pop_back();
    const std::size_t need = m_ - committed_sorted_.size();

    // Leaf first: it yields the lexicographically smaller word list.
    const auto pos = std::upper_bound(committed_sorted_.begin(), committed_sorted_.end(), node.cost);
    const auto offset = pos - committed_sorted_.begin();
    committed_sorted_.insert(pos, node.cost);
    committed_words_.push_back(node.bits);
    committed_durations_.push_back(node.duration);
    committed_units_ = committed_units_ + node.units;
    search();
    committed_units_ = committed_units_ + Units{-node.units.n0, -node.units.n1};
    committed_durations_.pop_back();
    committed_words_.pop_back();
    committed_sorted_.erase(committed_sorted_.begin() + offset);

    if (node.height >= 2 && open_.size() + 2 <= need) {
      open_.push_back({node.bits + '1', node.units + Units{0, 1}, node.cost + cm_.beta1(),
                       node.duration + cm_.t1(), node.height - 1});
      open_.push_back({node.bits + '0', node.units + Units{1, 0}, node.cost + cm_.beta0(),
                       node.duration + cm_.t0(), node.height - 1});
      search();
      open_.pop_back();
      open_.pop_back();
    }
    open_.push_back(node);
  }

  void record() {
    std::vector<Codeword> words;
    words.reserve(committed_words_.size());
    for (const auto& b : committed_words_) words.push_back(Codeword::from_string(b));
    if (!satisfies_rate(words)) return;
    const double cost = sorted_pairing_cost(committed_sorted_, src_);
    bool better;
    if (uniform_) {
      better = !have_best_ || order_.less(committed_units_, best_units_);
    } else {
      better = !have_best_ || cost < best_cost_ - tol(best_cost_);
      if (!better && cost <= best_cost_ + tol(best_cost_)) {
        better = exact_cost(words) < exact_cost(best_words_);
      }
    }
    if (better) {
      have_best_ = true;
      best_cost_ = cost;
      best_units_ = committed_units_;
      best_words_ = std::move(words);
    }
  }

  Rational exact_cost(const std::vector<Codeword>& words) const {
    return average_cost_exact(src_, assign_by_cost(words, src_, cm_), cm_);
  }

  const SymbolSource& src_;
  const CostModel& cm_;
  unsigned dp_;
  std::size_t m_;
  std::uint64_t budget_;
  bool uniform_;
  UnitOrder order_;
  std::vector<double> p_desc_;
  std::optional<double> duration_limit_;
  std::vector<std::vector<OptUnits>> within_units_;
  std::vector<std::vector<double>> within_;

  std::vector<OpenNode> open_;  // back() is the next node in depth-first order
  std::vector<double> committed_sorted_;
  std::vector<std::string> committed_words_;
  std::vector<double> committed_durations_;
  Units committed_units_;

  double upper_bound_ = kInf;
  OptUnits upper_units_;
  std::vector<Codeword> heuristic_words_;
  bool have_best_ = false;
  double best_cost_ = kInf;
  Units best_units_;
  std::vector<Codeword> best_words_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t nodes, std::optional<PrefixResult> incumbent)
    : Error("search node budget exhausted after " + std::to_string(nodes) + " nodes"),
      incumbent_(std::move(incumbent)) {}

unsigned default_tree_depth(std::size_t m) {
  if (m < 2) throw ValidationError("need at least 2 symbols", "m");
  return static_cast<unsigned>(std::min<std::size_t>(m - 1, kDefaultDepthCap));
}

double sorted_pairing_cost(std::vector<double> costs, const SymbolSource& src) {
  if (costs.size() != src.m()) throw ValidationError("cost count does not match M", "costs");
  std::sort(costs.begin(), costs.end());
  const auto p = probs_descending(src);
  double total = 0.0;
  for (std::size_t j = 0; j < costs.size(); ++j) total += p[j] * costs[j];
  return total;
}

Codebook assign_by_cost(std::vector<Codeword> words, const SymbolSource& src, const CostModel& cm,
                        CodebookKind kind) {
  if (words.size() != src.m()) throw ValidationError("word count does not match M", "words");
  const Rational b0 = to_rational(cm.beta0());
  const Rational b1 = to_rational(cm.beta1());
  // Doubles order words unless they are within rounding distance; then the
  // exact costs decide, so pairing agrees with exact evaluation.
  auto cost_order = [&](const Codeword& a, const Codeword& b) {
    const double ca = codeword_cost(a, cm);
    const double cb = codeword_cost(b, cm);
    if (std::abs(ca - cb) > 1e-9 * std::max(std::abs(ca), std::abs(cb))) return ca < cb ? -1 : 1;
    const Rational ea = Rational(a.n0()) * b0 + Rational(a.n1()) * b1;
    const Rational eb = Rational(b.n0()) * b0 + Rational(b.n1()) * b1;
    return ea < eb ? -1 : (eb < ea ? 1 : 0);
  };
  std::stable_sort(words.begin(), words.end(), [&](const Codeword& a, const Codeword& b) {
    if (const int c = cost_order(a, b); c != 0) return c < 0;
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Codeword> entries(src.m(), words.front());
  const auto order = src.by_decreasing_probability();
  for (std::size_t k = 0; k < order.size(); ++k) entries[order[k]] = words[k];
  return Codebook::create(kind, std::move(entries));
}

Codebook unary_codebook(const SymbolSource& src, const CostModel& cm) {
  const std::size_t m = src.m();
  std::vector<Codeword> words;
  words.reserve(m);
  for (std::size_t a = 0; a + 1 < m; ++a) {
    words.push_back(Codeword::from_string(std::string(a, '0') + '1'));
  }
  words.push_back(Codeword::from_string(std::string(m - 1, '0')));
  return assign_by_cost(std::move(words), src, cm);
}

PrefixResult optimize_prefix(const SymbolSource& src, const CostModel& cm,
                             const PrefixOptions& options) {
  const std::size_t m = src.m();
  const bool free_zero = cm.gamma().is_infinite();
  if (free_zero && !options.eta_max && (!options.dp || *options.dp + 1 >= m)) {
    auto cb = unary_codebook(src, cm);
    std::vector<double> costs;
    for (const auto& e : cb.entries()) costs.push_back(codeword_cost(e, cm));
    const double cost = sorted_pairing_cost(std::move(costs), src);
    const unsigned dp = options.dp.value_or(static_cast<unsigned>(m - 1));
    return PrefixResult{std::move(cb), dp, cost, 0, true};
  }

  const unsigned dp = options.dp.value_or(default_tree_depth(m));
  if (dp < 1 || dp > kMaxTreeDepth) {
    throw ValidationError("must be in [1, " + std::to_string(kMaxTreeDepth) + "]", "dp");
  }
  if (dp < min_fixed_length(m)) {
    throw InfeasibleError("no prefix code of " + std::to_string(m) + " words fits in depth " +
                          std::to_string(dp));
  }
  if (options.eta_max && !(*options.eta_max > 0)) {
    throw ValidationError("must be > 0", "eta_max");
  }
  return BranchAndBound(src, cm, dp, options).run();
}

}  // namespace mecode
