#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mecode/codebook.hpp"
#include "mecode/cost_model.hpp"
#include "mecode/metrics.hpp"

namespace mecode {

enum class SweepVar { n, gamma, m, dp };

SweepVar sweep_var_from_string(std::string_view s);
std::string to_string(SweepVar var);

// Grid syntax:
//   "a:b"        integers a..b
//   "a:b:s"      a, a+s, ... <= b
//   "a:b:linN"   N evenly spaced points, endpoints included
//   "a:b:logN"   N log-spaced points, endpoints included
//   "x,y,z"      explicit list; "inf" allowed
std::vector<double> parse_grid(std::string_view text);

// Model with beta0 = 1, beta1 = gamma (beta0 = 0, beta1 = 1 for infinity).
CostModel cost_model_for_gamma(double gamma, double t0 = 1.0, double t1 = 1.0);

struct SweepSpec {
  SweepVar var = SweepVar::gamma;
  std::vector<double> grid;
  // Held fixed when not swept. A non-empty `source` replaces uniform
  // sources and pins M.
  std::vector<std::size_t> ms{8};
  std::vector<double> gammas{5.0};
  std::vector<CodebookKind> kinds{CodebookKind::fixed};
  std::optional<unsigned> n_max;
  std::optional<unsigned> dp;
  std::optional<SymbolSource> source;
  double t0 = 1.0;
  double t1 = 1.0;
};

struct SweepRow {
  CodebookKind kind;
  std::size_t m;
  double gamma;       // +inf when bit-0 is free
  unsigned n_or_dp;   // code length (fixed) or tree depth (prefix)
  CodebookMetrics metrics;
};

// One row per grid point, kind, M and gamma. Points where no code exists
// (2^n < M, dp < ceil(log2 M)) are skipped.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Columns: kind,m,gamma,n_or_dp,l_src,eta,beta_code,epsilon. Non-uniform
// sources get a leading '#' comment describing the epsilon baseline.
std::string sweep_csv(const std::vector<SweepRow>& rows, bool uniform_source = true);

// Shortest round-trip decimal form; "inf" for infinity.
std::string format_number(double v);

}  // namespace mecode
