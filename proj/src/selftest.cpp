#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "mecode/app.hpp"
#include "mecode/codec.hpp"
#include "mecode/error.hpp"
#include "mecode/fixed_opt.hpp"
#include "mecode/metrics.hpp"
#include "mecode/oracle.hpp"
#include "mecode/prefix_opt.hpp"
#include "mecode/prefix_tree.hpp"
#include "mecode/sweep.hpp"

namespace mecode::app {

namespace {

// A property returns an empty string on success, otherwise the first
// counterexample. `fault` corrupts one computed value.
using Property = std::function<std::string(std::mt19937_64& rng, bool fault)>;

SymbolSource random_source(std::size_t m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(m);
  double sum = 0;
  for (auto& x : w) sum += x = u(rng);
  for (auto& x : w) x /= sum;
  return SymbolSource::create(std::move(w));
}

std::string describe(std::size_t m, double gamma) {
  std::ostringstream os;
  os << "M=" << m << " gamma=" << gamma;
  return os.str();
}

std::string describe(std::size_t m, unsigned dp, double gamma) {
  return describe(m, gamma) + " dp=" + std::to_string(dp);
}

std::string prefix_matches_oracle(std::mt19937_64& rng, bool fault) {
  for (std::size_t m : {3u, 4u}) {
    for (unsigned dp : {2u, 3u}) {
      for (double gamma : {1.0, 2.0, 5.0, 100.0}) {
        const auto cm = cost_model_for_gamma(gamma);
        for (const auto& src : {SymbolSource::uniform(m), random_source(m, rng)}) {
          const auto got = optimize_prefix(src, cm, depth_options(dp));
          const auto want = oracle::optimal_prefix(src, cm, dp);
          Rational a = average_cost_exact(src, got.codebook, cm);
          if (fault) a += 1;
          if (a != average_cost_exact(src, want, cm)) return describe(m, dp, gamma);
        }
      }
    }
  }
  return {};
}

std::string fixed_cost_matches_enumeration(std::mt19937_64&, bool fault) {
  for (unsigned n = 1; n <= 6; ++n) {
    for (std::size_t m = 2; m <= std::min<std::size_t>(std::size_t{1} << n, 12); ++m) {
      for (double gamma : {1.0, 2.5, 7.0}) {
        const auto cm = cost_model_for_gamma(gamma);
        Rational formula = fixed_cost_exact(n, m, cm);
        if (fault) formula *= 2;
        if (formula != oracle::fixed_cost(n, m, cm)) {
          return "n=" + std::to_string(n) + " " + describe(m, gamma);
        }
      }
    }
  }
  return {};
}

std::string codec_round_trip(std::mt19937_64& rng, bool fault) {
  const auto cm = cost_model_for_gamma(5.0);
  const auto src = SymbolSource::uniform(8);
  for (const auto& cb : {optimize_fixed(src, cm).codebook, optimize_prefix(src, cm).codebook}) {
    std::uniform_int_distribution<std::size_t> pick(0, cb.m() - 1);
    std::vector<std::size_t> symbols(2000);
    for (auto& s : symbols) s = pick(rng);
    auto back = decode(encode(symbols, cb), cb);
    if (fault) back.front() ^= 1;
    if (back != symbols) return to_string(cb.kind()) + " codebook";
  }
  return {};
}

std::string prefix_codes_are_prefix_free(std::mt19937_64& rng, bool fault) {
  for (std::size_t m : {3u, 5u, 8u}) {
    for (double gamma : {1.0, 3.0, 50.0}) {
      const auto cb = optimize_prefix(random_source(m, rng), cost_model_for_gamma(gamma)).codebook;
      double kraft = cb.kraft_sum();
      if (fault) kraft += 1;
      if (!is_prefix_free(cb) || kraft > 1.0) return describe(m, gamma);
    }
  }
  return {};
}

std::string fixed_length_monotone_in_gamma(std::mt19937_64&, bool fault) {
  for (std::size_t m : {8u, 16u}) {
    unsigned prev = 0;
    for (double gamma : parse_grid("1:10000:log13")) {
      unsigned n = optimize_fixed(m, cost_model_for_gamma(gamma)).scan.n_opt;
      if (fault && gamma > 1) n = 0;
      if (n < prev) return describe(m, gamma) + " n=" + std::to_string(n);
      prev = n;
    }
  }
  return {};
}

std::string prefix_dominates_fixed(std::mt19937_64&, bool fault) {
  for (std::size_t m : {4u, 8u}) {
    const auto src = SymbolSource::uniform(m);
    for (double gamma : {1.0, 2.0, 5.0, 20.0, 100.0}) {
      const auto cm = cost_model_for_gamma(gamma);
      double prefix = optimize_prefix(src, cm).cost;
      if (fault) prefix += 1000;
      const auto fixed = optimize_fixed(src, cm);
      const double best_fixed = fixed.scan.cost_at(fixed.scan.n_opt);
      if (prefix > best_fixed * (1 + 1e-12)) return describe(m, gamma);
    }
  }
  return {};
}

std::string epsilon_scale_invariant(std::mt19937_64& rng, bool fault) {
  const auto src = random_source(6, rng);
  for (double gamma : {1.5, 4.0, 30.0}) {
    const auto cm = cost_model_for_gamma(gamma);
    const auto cb = optimize_prefix(src, cm).codebook;
    const double base = energy_saving(src, cb, cm);
    for (double scale : {1e-9, 3.0, 1e6}) {
      double e = energy_saving(src, cb, cm.scaled(scale));
      if (fault) e += 0.5;
      if (std::abs(e - base) > 1e-12) return describe(6, gamma);
    }
  }
  return {};
}

std::string pairs_match_ancestors(std::mt19937_64&, bool fault) {
  for (unsigned dp = 1; dp <= 5; ++dp) {
    auto pairs = parent_child_pairs(dp).rows;
    if (fault) pairs.emplace_back(0, 0);
    auto want = oracle::ancestor_pairs(dp);
    std::sort(pairs.begin(), pairs.end());
    std::sort(want.begin(), want.end());
    if (pairs != want) return "dp=" + std::to_string(dp);
  }
  return {};
}

const std::vector<std::pair<std::string, Property>>& properties() {
  static const std::vector<std::pair<std::string, Property>> all = {
      {"prefix_matches_oracle", prefix_matches_oracle},
      {"fixed_cost_matches_enumeration", fixed_cost_matches_enumeration},
      {"codec_round_trip", codec_round_trip},
      {"prefix_codes_are_prefix_free", prefix_codes_are_prefix_free},
      {"fixed_length_monotone_in_gamma", fixed_length_monotone_in_gamma},
      {"prefix_dominates_fixed", prefix_dominates_fixed},
      {"epsilon_scale_invariant", epsilon_scale_invariant},
      {"pairs_match_ancestors", pairs_match_ancestors},
  };
  return all;
}

}  // namespace

std::vector<std::string> selftest_property_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : properties()) names.push_back(name);
  return names;
}

std::vector<PropertyResult> run_selftest(const SelftestOptions& options) {
  if (options.inject_fault) {
    const auto names = selftest_property_names();
    if (std::find(names.begin(), names.end(), *options.inject_fault) == names.end()) {
      throw ValidationError("unknown property '" + *options.inject_fault + "'", "inject_fault");
    }
  }
  std::vector<PropertyResult> results;
  for (const auto& [name, check] : properties()) {
    std::mt19937_64 rng(options.seed);
    const bool fault = options.inject_fault && *options.inject_fault == name;
    PropertyResult r{name, false, {}};
    try {
      r.detail = check(rng, fault);
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace mecode::app
