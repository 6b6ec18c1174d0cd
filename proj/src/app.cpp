#include "mecode/app.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "mecode/error.hpp"
#include "mecode/fixed_opt.hpp"
#include "mecode/metrics.hpp"
#include "mecode/prefix_opt.hpp"
#include "mecode/sweep.hpp"

namespace mecode::app {

namespace {

using nlohmann::ordered_json;

std::string source_bits(std::size_t symbol, unsigned k) {
  std::string s(k, '0');
  for (unsigned b = 0; b < k; ++b) {
    if ((symbol >> b) & 1u) s[k - 1 - b] = '1';
  }
  return s;
}

ordered_json mapping(const Codebook& cb, unsigned k) {
  auto rows = ordered_json::array();
  for (std::size_t i = 0; i < cb.m(); ++i) {
    rows.push_back({{"source", source_bits(i, k)}, {"codeword", cb[i].str()}});
  }
  return rows;
}

Artifact table1() {
  // Bit-0 free: the optimal fixed-length code is the all-zero word plus
  // every weight-1 word of length M-1.
  ordered_json out = ordered_json::object();
  const auto cm = CostModel::create(0.0, 1.0, 1.0, 1.0);
  for (unsigned k : {2u, 3u}) {
    const std::size_t m = std::size_t{1} << k;
    const auto res = optimize_fixed(m, cm);
    out["k" + std::to_string(k)] = {{"m", m},
                                    {"n", res.scan.n_opt},
                                    {"mapping", mapping(res.codebook, k)}};
  }
  return {"table1.json", out.dump(2) + "\n"};
}

Artifact table2() {
  ordered_json out = ordered_json::object();
  const auto cm = CostModel::create(0.0, 1.0, 1.0, 1.0);
  for (unsigned k : {2u, 3u}) {
    const std::size_t m = std::size_t{1} << k;
    const auto src = SymbolSource::uniform(m);
    const auto res = optimize_prefix(src, cm);
    out["k" + std::to_string(k)] = {
        {"m", m},
        {"average_length", average_length(src, res.codebook)},
        {"mapping", mapping(res.codebook, k)}};
  }
  return {"table2.json", out.dump(2) + "\n"};
}

Artifact table4() {
  const auto cm = CostModel::create(1.0, 5.0, 1.0, 1.0);
  const auto src = SymbolSource::uniform(8);
  const auto fixed = optimize_fixed(src, cm);
  const auto prefix = optimize_prefix(src, cm, depth_options(7));
  ordered_json out = {
      {"m", 8},
      {"beta0", cm.beta0()},
      {"beta1", cm.beta1()},
      {"fixed",
       {{"n", fixed.scan.n_opt},
        {"average_cost", average_cost(src, fixed.codebook, cm)},
        {"epsilon", energy_saving(src, fixed.codebook, cm)},
        {"mapping", mapping(fixed.codebook, 3)}}},
      {"prefix",
       {{"dp", prefix.dp},
        {"average_cost", average_cost(src, prefix.codebook, cm)},
        {"epsilon", energy_saving(src, prefix.codebook, cm)},
        {"mapping", mapping(prefix.codebook, 3)}}},
  };
  return {"table4.json", out.dump(2) + "\n"};
}

Artifact sweep_artifact(const std::string& name, const SweepSpec& spec) {
  return {name, sweep_csv(run_sweep(spec))};
}

}  // namespace

ReproduceTarget reproduce_target_from_string(std::string_view s) {
  for (auto t : all_reproduce_targets()) {
    if (to_string(t) == s) return t;
  }
  throw ValidationError("unknown target '" + std::string(s) + "'", "target");
}

std::string to_string(ReproduceTarget target) {
  switch (target) {
    case ReproduceTarget::table1: return "table1";
    case ReproduceTarget::table2: return "table2";
    case ReproduceTarget::table4: return "table4";
    case ReproduceTarget::fig2: return "fig2";
    case ReproduceTarget::fig3: return "fig3";
    case ReproduceTarget::fig4: return "fig4";
    case ReproduceTarget::fig5: return "fig5";
  }
  return "?";
}

std::vector<ReproduceTarget> all_reproduce_targets() {
  return {ReproduceTarget::table1, ReproduceTarget::table2, ReproduceTarget::table4,
          ReproduceTarget::fig2,   ReproduceTarget::fig3,   ReproduceTarget::fig4,
          ReproduceTarget::fig5};
}

std::vector<Artifact> reproduce(ReproduceTarget target) {
  switch (target) {
    case ReproduceTarget::table1: return {table1()};
    case ReproduceTarget::table2: return {table2()};
    case ReproduceTarget::table4: return {table4()};
    case ReproduceTarget::fig2: {
      // Cost against code length, M = 128.
      SweepSpec spec;
      spec.var = SweepVar::n;
      spec.grid = parse_grid("7:127");
      spec.ms = {128};
      spec.gammas = {1, 2, 5, 10, 100};
      return {sweep_artifact("fig2.csv", spec)};
    }
    case ReproduceTarget::fig3: {
      // Optimal fixed length against gamma.
      SweepSpec spec;
      spec.var = SweepVar::gamma;
      spec.grid = parse_grid("1:10000:log25");
      spec.ms = {8, 16, 32, 128};
      return {sweep_artifact("fig3.csv", spec)};
    }
    case ReproduceTarget::fig4: {
      // Fixed-length energy saving against gamma.
      SweepSpec spec;
      spec.var = SweepVar::gamma;
      spec.grid = parse_grid("1:1000000:log31");
      spec.ms = {8, 16, 32, 128};
      return {sweep_artifact("fig4.csv", spec)};
    }
    case ReproduceTarget::fig5: {
      // Fixed against prefix saving, M = 8.
      SweepSpec spec;
      spec.var = SweepVar::gamma;
      spec.grid = parse_grid("1:100:log25");
      spec.ms = {8};
      spec.kinds = {CodebookKind::fixed, CodebookKind::prefix};
      spec.dp = 7;
      return {sweep_artifact("fig5.csv", spec)};
    }
  }
  return {};
}

std::vector<std::filesystem::path> write_artifacts(const std::vector<Artifact>& artifacts,
                                                   const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& a : artifacts) {
    const auto path = out_dir / a.filename;
    std::ofstream os(path, std::ios::binary);
    os << a.contents;
    if (!os) throw Error("cannot write " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace mecode::app
