// Acceptance checks: prints one PASS/FAIL line per criterion, exits non-zero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "mecode/codec.hpp"
#include "mecode/error.hpp"
#include "mecode/fixed_opt.hpp"
#include "mecode/metrics.hpp"
#include "mecode/oracle.hpp"
#include "mecode/prefix_opt.hpp"
#include "mecode/prefix_tree.hpp"
#include "mecode/rfid.hpp"
#include "mecode/sweep.hpp"

using namespace mecode;

namespace {

// Collects the first failure message; an empty string means the criterion holds.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

template <typename T>
std::string str(const T& v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

SymbolSource random_source(std::mt19937_64& rng, std::size_t m) {
  std::uniform_int_distribution<int> w(1, 30);
  std::vector<int> weights(m);
  for (auto& x : weights) x = w(rng);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> probs;
  for (int x : weights) probs.push_back(x / total);
  probs.back() = 1.0 - std::accumulate(probs.begin(), probs.end() - 1, 0.0);
  return SymbolSource::create(probs);
}

rfid::RfidLink reader_link(double r) {
  rfid::RfidLink l;
  l.p_t = 4;
  l.g_t = 1;
  l.g_r = 1.64;
  l.lambda = rfid::wavelength_for(915e6);
  l.r = r;
  l.l_p = 0.5;
  l.r_ant = 50;
  l.n_stages = 3;
  l.v_t = 0.2;
  l.p_tag = 5e-5;
  l.t0 = 12.5e-6;
  l.t1 = 12.5e-6;
  return l;
}

// 1: reference operating point, exact costs 9 and 7.75, under one second.
std::string criterion1() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto cm = CostModel::create(1, 5, 1, 1);
  const auto src = SymbolSource::uniform(8);
  const auto fixed = optimize_fixed(8, cm);
  const auto prefix = optimize_prefix(src, cm);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Rational fc = average_cost_exact(src, fixed.codebook, cm);
  const Rational pc = average_cost_exact(src, prefix.codebook, cm);
  c.require(fc == 9, "fixed cost " + str(fc));
  c.require(pc == Rational(31, 4), "prefix cost " + str(pc));
  c.require(std::abs(fixed.scan.cost_at(fixed.scan.n_opt) - 9.0) <= 1e-12, "fixed scan cost");
  c.require(std::abs(prefix.cost - 7.75) <= 1e-12, "prefix reported cost " + str(prefix.cost));
  c.require(secs < 1.0, "runtime " + str(secs) + " s");
  return c.failure();
}

// 2: saving of the prefix optimum at M=8, ratio 5.
std::string criterion2() {
  Check c;
  const auto cm = CostModel::create(1, 5, 1, 1);
  const auto src = SymbolSource::uniform(8);
  const double eps = energy_saving(src, optimize_prefix(src, cm).codebook, cm);
  c.require(std::abs(eps - (1.0 - 15.5 / 18.0)) <= 1e-12, "epsilon " + str(eps));
  c.require(std::lround(eps * 100) == 14, "epsilon does not round to 14%");
  return c.failure();
}

// 3: fixed-length optimum at ratio 1, its infinite-ratio limit, and monotonicity.
std::string criterion3() {
  Check c;
  const auto grid = parse_grid("1:1e8:log25");
  for (std::size_t m : {4u, 8u, 16u, 128u}) {
    const auto log2m = static_cast<unsigned>(std::log2(static_cast<double>(m)));
    const auto at1 = optimize_fixed(m, CostModel::create(1, 1, 1, 1)).scan.n_opt;
    c.require(at1 == log2m, "M=" + str(m) + " ratio 1 gives n=" + str(at1));
    const auto inf = optimize_fixed(m, CostModel::create(0, 1, 1, 1)).scan.n_opt;
    c.require(inf == m - 1, "M=" + str(m) + " infinite ratio gives n=" + str(inf));
    const auto big = optimize_fixed(m, CostModel::create(1, 1e8, 1, 1)).scan.n_opt;
    c.require(big == m - 1, "M=" + str(m) + " ratio 1e8 gives n=" + str(big));
    unsigned prev = 0;
    for (double g : grid) {
      const auto n = optimize_fixed(m, cost_model_for_gamma(g)).scan.n_opt;
      c.require(n >= prev, "M=" + str(m) + " n decreases at ratio " + str(g));
      prev = n;
    }
  }
  return c.failure();
}

// 4: closed-form saving limit at M=128 and the optimizer at ratio 1e6.
std::string criterion4() {
  Check c;
  const double lim = epsilon_max_fixed(128);
  c.require(std::abs(lim - (1.0 - 254.0 / 896.0)) <= 1e-15, "closed form " + str(lim));
  const auto cm = cost_model_for_gamma(1e6);
  const auto res = optimize_fixed(128, cm);
  const double eps = energy_saving(SymbolSource::uniform(128), res.codebook, cm);
  c.require(std::abs(eps - lim) <= 1e-3, "optimizer epsilon " + str(eps) + " vs " + str(lim));
  c.require(eps >= 0.70, "saving below 70%");
  return c.failure();
}

// 5: search equals exhaustive enumeration on every small instance.
std::string criterion5() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240);
  int compared = 0;
  for (std::size_t m : {3u, 4u, 5u}) {
    std::vector<SymbolSource> sources{SymbolSource::uniform(m), random_source(rng, m),
                                      random_source(rng, m)};
    for (unsigned dp : {2u, 3u, 4u}) {
      for (double g : {1.0, 2.0, 5.0, 100.0}) {
        const auto cm = CostModel::create(1, g, 1, 1);
        for (std::size_t s = 0; s < sources.size(); ++s) {
          const auto& src = sources[s];
          const std::string where = "M=" + str(m) + " dp=" + str(dp) + " ratio=" + str(g) +
                                    " source#" + str(s);
          std::optional<Rational> want, got;
          try {
            want = average_cost_exact(src, oracle::optimal_prefix(src, cm, dp), cm);
          } catch (const InfeasibleError&) {
          }
          try {
            got = average_cost_exact(src, optimize_prefix(src, cm, depth_options(dp)).codebook, cm);
          } catch (const InfeasibleError&) {
          }
          c.require(want.has_value() == got.has_value(), where + ": feasibility differs");
          if (want && got) c.require(*want == *got, where + ": " + str(*got) + " vs " + str(*want));
          ++compared;
        }
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(compared == 108, "compared " + str(compared) + " instances");
  c.require(secs < 30.0, "runtime " + str(secs) + " s");
  return c.failure();
}

// 6: variable length dominates fixed length, strictly somewhere, by >= 10 points at best.
std::string criterion6() {
  Check c;
  bool strict = false;
  for (std::size_t m : {4u, 8u}) {
    const auto src = SymbolSource::uniform(m);
    for (double g : {1.0, 2.0, 5.0, 20.0, 100.0}) {
      const auto cm = CostModel::create(1, g, 1, 1);
      const Rational f = average_cost_exact(src, optimize_fixed(m, cm).codebook, cm);
      const Rational p = average_cost_exact(src, optimize_prefix(src, cm).codebook, cm);
      c.require(p <= f, "M=" + str(m) + " ratio " + str(g) + ": prefix costs more");
      if (m == 8 && g >= 2 && p < f) strict = true;
    }
  }
  c.require(strict, "no strict improvement for M=8");
  SweepSpec spec;
  spec.grid = parse_grid("1:100:log25");
  spec.kinds = {CodebookKind::fixed, CodebookKind::prefix};
  std::map<double, std::pair<double, double>> eps;
  for (const auto& r : run_sweep(spec)) {
    (r.kind == CodebookKind::fixed ? eps[r.gamma].first : eps[r.gamma].second) = r.metrics.epsilon;
  }
  double gap = 0;
  for (const auto& [g, e] : eps) gap = std::max(gap, e.second - e.first);
  c.require(gap >= 0.10, "max saving gap " + str(gap));
  return c.failure();
}

// 7: closed-form fixed cost equals enumeration of all n-bit words.
std::string criterion7() {
  Check c;
  for (double g : {1.0, 2.5, 7.0, 1e3}) {
    const auto cm = CostModel::create(1, g, 1, 1);
    for (unsigned n = 1; n <= 10; ++n) {
      const std::size_t top = std::min<std::size_t>(std::size_t{1} << n, 32);
      for (std::size_t m = 2; m <= top; ++m) {
        c.require(fixed_cost_exact(n, m, cm) == oracle::fixed_cost(n, m, cm),
                  "n=" + str(n) + " m=" + str(m) + " ratio " + str(g));
      }
    }
  }
  return c.failure();
}

// 8: codec round trip and empirical cost for both kinds.
std::string criterion8() {
  Check c;
  const auto cm = CostModel::create(1, 5, 1, 1);
  std::mt19937_64 rng(8);
  for (const auto& src : {SymbolSource::uniform(8),
                          SymbolSource::create({0.3, 0.2, 0.15, 0.1, 0.1, 0.05, 0.05, 0.05})}) {
    const std::vector<Codebook> books{optimize_fixed(src, cm).codebook,
                                      optimize_prefix(src, cm).codebook};
    std::discrete_distribution<std::size_t> d(src.probs().begin(), src.probs().end());
    std::vector<std::size_t> symbols(100'000);
    for (auto& s : symbols) s = d(rng);
    for (const auto& cb : books) {
      const auto kind = to_string(cb.kind());
      const auto bs = encode(symbols, cb);
      c.require(decode(bs, cb) == symbols, kind + " round trip");
      c.require(decode(BitStream::from_bytes(bs.to_bytes()), cb) == symbols,
                kind + " byte round trip");
      const double empirical = stream_cost(bs, cm) / static_cast<double>(symbols.size());
      const double expected = average_cost(src, cb, cm);
      c.require(std::abs(empirical - expected) <= 0.02 * expected,
                kind + " empirical cost " + str(empirical) + " vs " + str(expected));
    }
  }
  return c.failure();
}

// 9: parent-child matrix fixture and ancestor enumeration.
std::string criterion9() {
  Check c;
  const std::vector<std::vector<int>> displayed{{1, 1, 0, 0, 0, 0},
                                                {1, 0, 1, 0, 0, 0},
                                                {0, 0, 0, 1, 1, 0},
                                                {0, 0, 0, 1, 0, 1}};
  c.require(parent_child_pairs(2).dense() == displayed, "depth-2 matrix differs");
  for (unsigned dp : {3u, 4u, 5u}) {
    auto rows = parent_child_pairs(dp).rows;
    auto brute = oracle::ancestor_pairs(dp);
    std::sort(rows.begin(), rows.end());
    std::sort(brute.begin(), brute.end());
    c.require(rows == brute, "depth " + str(dp) + " pairs differ");
  }
  return c.failure();
}

// 10: surplus at short range, deficit at long range, ratio-only savings.
std::string criterion10() {
  Check c;
  bool seen_surplus = false, seen_deficit = false, flipped_back = false;
  int compared = 0;
  const auto src = SymbolSource::uniform(8);
  for (double r = 0.25; r <= 12.0; r += 0.25) {
    const auto link = reader_link(r);
    const auto costs = rfid::tag_costs(link);
    const auto g = rfid::cost_ratio(link);
    if (costs.regime == rfid::Regime::surplus) {
      c.require(g.is_infinite() && costs.beta0 == 0.0, "surplus without free bit-0 at " + str(r));
      if (seen_deficit) flipped_back = true;
      seen_surplus = true;
      continue;
    }
    seen_deficit = true;
    c.require(!g.is_infinite(), "deficit with infinite ratio at " + str(r));
    const auto physical = rfid::to_cost_model(link);
    const auto pure = cost_model_for_gamma(g.value());
    const double ef = energy_saving(src, optimize_fixed(src, physical).codebook, physical);
    const double ef0 = energy_saving(src, optimize_fixed(src, pure).codebook, pure);
    const double ep = energy_saving(src, optimize_prefix(src, physical).codebook, physical);
    const double ep0 = energy_saving(src, optimize_prefix(src, pure).codebook, pure);
    c.require(std::abs(ef - ef0) <= 1e-12, "fixed saving differs at r=" + str(r));
    c.require(std::abs(ep - ep0) <= 1e-12, "prefix saving differs at r=" + str(r));
    ++compared;
  }
  c.require(seen_surplus, "no surplus regime at short range");
  c.require(seen_deficit, "no deficit regime at long range");
  c.require(!flipped_back, "regime returns to surplus at longer range");
  c.require(compared > 0, "no deficit points compared");
  return c.failure();
}

// 11: average length of the emitted unary code.
std::string criterion11() {
  Check c;
  const auto cm = CostModel::create(0, 1, 1, 1);
  for (unsigned k : {2u, 3u, 4u}) {
    const std::size_t m = std::size_t{1} << k;
    const auto src = SymbolSource::uniform(m);
    const auto cb = optimize_prefix(src, cm).codebook;
    const double got = average_length(src, cb);
    const double want = 0.5 * (std::ldexp(1.0, static_cast<int>(k)) + 1 -
                               std::ldexp(1.0, -static_cast<int>(k - 1)));
    c.require(std::abs(got - want) <= 1e-12, "k=" + str(k) + ": " + str(got) + " vs " + str(want));
  }
  return c.failure();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"reference costs 9 and 7.75", criterion1},
      {"14% saving at M=8, ratio 5", criterion2},
      {"fixed-length optimum properties", criterion3},
      {"saving limit at M=128", criterion4},
      {"search matches exhaustive enumeration", criterion5},
      {"variable length dominates fixed length", criterion6},
      {"closed-form fixed cost matches enumeration", criterion7},
      {"codec round trip and empirical cost", criterion8},
      {"parent-child matrix", criterion9},
      {"RFID regimes and ratio-only savings", criterion10},
      {"unary code average length", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, run] = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    std::string failure;
    try {
      failure = run();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (failure.empty() ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << name
              << " (" << std::fixed << std::setprecision(3) << secs << " s)";
    if (!failure.empty()) std::cout << " -- " << failure;
    std::cout << '\n';
    failed += !failure.empty();
  }
  return failed == 0 ? 0 : 1;
}
