#include "mecode/sweep.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "mecode/error.hpp"
#include "mecode/fixed_opt.hpp"
#include "mecode/prefix_opt.hpp"

namespace mecode {

namespace {

double parse_double(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("invalid number '" + std::string(s) + "'", "grid");
  }
  return v;
}

std::size_t parse_count(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 2) {
    throw ValidationError("point count must be an integer >= 2", "grid");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto at = s.find(sep, start);
    parts.push_back(s.substr(start, at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

unsigned as_unsigned(double v, const char* what) {
  if (!std::isfinite(v) || v < 1 || v != std::floor(v) || v > 1e6) {
    throw ValidationError(std::string(what) + " grid values must be positive integers", "grid");
  }
  return static_cast<unsigned>(v);
}

}  // namespace

SweepVar sweep_var_from_string(std::string_view s) {
  if (s == "n") return SweepVar::n;
  if (s == "gamma") return SweepVar::gamma;
  if (s == "m") return SweepVar::m;
  if (s == "dp") return SweepVar::dp;
  throw ValidationError("expected one of n, gamma, m, dp", "var");
}

std::string to_string(SweepVar var) {
  switch (var) {
    case SweepVar::n: return "n";
    case SweepVar::gamma: return "gamma";
    case SweepVar::m: return "m";
    case SweepVar::dp: return "dp";
  }
  return "?";
}

std::vector<double> parse_grid(std::string_view text) {
  if (text.empty()) throw ValidationError("empty grid", "grid");
  if (text.find(',') != std::string_view::npos || text.find(':') == std::string_view::npos) {
    std::vector<double> out;
    for (auto part : split(text, ',')) out.push_back(parse_double(part));
    return out;
  }
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw ValidationError("expected a:b, a:b:step, a:b:linN or a:b:logN", "grid");
  }
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw ValidationError("range bounds must be finite with a <= b", "grid");
  }
  std::vector<double> out;
  if (parts.size() == 3 && (parts[2].starts_with("log") || parts[2].starts_with("lin"))) {
    const bool log = parts[2].starts_with("log");
    const std::size_t count = parse_count(parts[2].substr(3));
    if (log && lo <= 0) throw ValidationError("log grid needs a > 0", "grid");
    for (std::size_t i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(count - 1);
      double v = log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
      if (i == 0) v = lo;
      if (i + 1 == count) v = hi;
      out.push_back(v);
    }
    return out;
  }
  const double step = parts.size() == 3 ? parse_double(parts[2]) : 1.0;
  if (!(step > 0) || !std::isfinite(step)) throw ValidationError("step must be > 0", "grid");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

CostModel cost_model_for_gamma(double gamma, double t0, double t1) {
  if (std::isinf(gamma) && gamma > 0) return CostModel::create(0.0, 1.0, t0, t1);
  if (!std::isfinite(gamma) || gamma <= 0) throw ValidationError("must be > 0", "gamma");
  return CostModel::create(1.0, gamma, t0, t1);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.grid.empty()) throw ValidationError("empty grid", "grid");
  if (spec.kinds.empty()) throw ValidationError("no codebook kinds", "kinds");
  if (spec.var == SweepVar::n) {
    for (auto k : spec.kinds) {
      if (k != CodebookKind::fixed) throw ValidationError("sweeping n needs kind fixed", "kinds");
    }
  }
  if (spec.var == SweepVar::dp) {
    for (auto k : spec.kinds) {
      if (k != CodebookKind::prefix) throw ValidationError("sweeping dp needs kind prefix", "kinds");
    }
  }
  if (spec.source && spec.var == SweepVar::m) {
    throw ValidationError("cannot sweep m with an explicit source", "var");
  }

  std::vector<std::size_t> ms = spec.ms;
  if (spec.source) ms = {spec.source->m()};
  if (spec.var == SweepVar::m) {
    ms.clear();
    for (double v : spec.grid) ms.push_back(as_unsigned(v, "m"));
  }
  std::vector<double> gammas = spec.var == SweepVar::gamma ? spec.grid : spec.gammas;
  std::vector<double> points = (spec.var == SweepVar::n || spec.var == SweepVar::dp)
                                   ? spec.grid
                                   : std::vector<double>{0.0};

  std::vector<SweepRow> rows;
  for (auto kind : spec.kinds) {
    for (std::size_t m : ms) {
      const SymbolSource src = spec.source ? *spec.source : SymbolSource::uniform(m);
      for (double gamma : gammas) {
        const CostModel cm = cost_model_for_gamma(gamma, spec.t0, spec.t1);
        for (double point : points) {
          SweepRow row{kind, m, gamma, 0, {}};
          if (spec.var == SweepVar::n) {
            const unsigned n = as_unsigned(point, "n");
            if (n < min_fixed_length(m)) continue;
            row.n_or_dp = n;
            row.metrics = evaluate(src, fixed_codebook(n, src), cm);
          } else if (kind == CodebookKind::fixed) {
            auto res = optimize_fixed(src, cm, spec.n_max);
            row.n_or_dp = res.scan.n_opt;
            row.metrics = evaluate(src, res.codebook, cm);
          } else {
            PrefixOptions opt;
            opt.dp = spec.dp;
            if (spec.var == SweepVar::dp) {
              opt.dp = as_unsigned(point, "dp");
              if (*opt.dp < min_fixed_length(m)) continue;
            }
            auto res = optimize_prefix(src, cm, opt);
            row.n_or_dp = res.dp;
            row.metrics = evaluate(src, res.codebook, cm);
          }
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string sweep_csv(const std::vector<SweepRow>& rows, bool uniform_source) {
  std::ostringstream os;
  if (!uniform_source) {
    os << "# epsilon baseline: sum_i p_i (N0(i) beta0 + N1(i) beta1) over the "
          "ceil(log2 M)-bit binary index of each symbol\n";
  }
  os << "kind,m,gamma,n_or_dp,l_src,eta,beta_code,epsilon\n";
  for (const auto& r : rows) {
    os << to_string(r.kind) << ',' << r.m << ',' << format_number(r.gamma) << ',' << r.n_or_dp
       << ',' << format_number(r.metrics.l_src) << ',' << format_number(r.metrics.eta) << ','
       << format_number(r.metrics.beta_code) << ',' << format_number(r.metrics.epsilon) << '\n';
  }
  return os.str();
}

}  // namespace mecode
