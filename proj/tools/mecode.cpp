// mecode: minimum-energy codebook construction, coding and evaluation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mecode/app.hpp"
#include "mecode/codec.hpp"
#include "mecode/error.hpp"
#include "mecode/fixed_opt.hpp"
#include "mecode/metrics.hpp"
#include "mecode/prefix_opt.hpp"
#include "mecode/rfid.hpp"
#include "mecode/sweep.hpp"

namespace {

using nlohmann::ordered_json;
using namespace mecode;

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  if (!os) throw Error("cannot write " + path);
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void print(const ordered_json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : j.items()) {
    std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
              << '\n';
  }
}

// Options shared by every command that needs a cost model.
struct CostOptions {
  std::optional<double> beta0, beta1;
  double t0 = 1.0, t1 = 1.0;
  std::string costmodel_path;

  void add_to(CLI::App* cmd) {
    auto* b0 = cmd->add_option("--beta0", beta0, "Cost of bit-0")->envname("MECODE_BETA0");
    auto* b1 = cmd->add_option("--beta1", beta1, "Cost of bit-1")->envname("MECODE_BETA1");
    cmd->add_option("--t0", t0, "Duration of bit-0 (s)")->envname("MECODE_T0");
    cmd->add_option("--t1", t1, "Duration of bit-1 (s)")->envname("MECODE_T1");
    auto* file = cmd->add_option("--costmodel", costmodel_path, "Cost model JSON file");
    file->excludes(b0)->excludes(b1);
  }

  CostModel resolve() const {
    if (!costmodel_path.empty()) return cost_model_from_json(read_json(costmodel_path));
    if (!beta0 || !beta1) throw ValidationError("--beta0 and --beta1 (or --costmodel) are required");
    return CostModel::create(*beta0, *beta1, t0, t1);
  }
};

ordered_json metrics_json(const CodebookMetrics& m) {
  return {{"l_src", m.l_src},         {"t_src", m.t_src},       {"t_code", m.t_code},
          {"r_src", m.r_src},         {"r_code", m.r_code},     {"eta", m.eta},
          {"avg_length", m.avg_length}, {"beta_code", m.beta_code}, {"beta_src", m.beta_src},
          {"epsilon", m.epsilon}};
}

struct OptimizeCmd {
  std::string kind = "prefix";
  std::optional<std::size_t> m;
  std::string probs_path;
  CostOptions cost;
  std::optional<unsigned> n_max, dp;
  std::optional<double> eta_max;
  std::uint64_t node_budget = PrefixOptions{}.node_budget;
  std::string out_path, scan_path;

  void add(CLI::App& app, bool& json) {
    auto* cmd = app.add_subcommand("optimize", "Construct a minimum-energy codebook");
    cmd->add_option("--kind", kind, "fixed or prefix")->check(CLI::IsMember({"fixed", "prefix"}));
    cmd->add_option("--m", m, "Number of source symbols (uniform source)")->envname("MECODE_M");
    cmd->add_option("--probs", probs_path, "Source probabilities JSON {\"probs\":[...]}");
    cost.add_to(cmd);
    cmd->add_option("--n-max", n_max, "Largest fixed code length scanned")->envname("MECODE_N_MAX");
    cmd->add_option("--dp", dp, "Prefix code tree depth")->envname("MECODE_DP");
    cmd->add_option("--eta-max", eta_max, "Largest allowed rate-reduction factor");
    cmd->add_option("--node-budget", node_budget, "Search node budget for prefix codes")
        ->envname("MECODE_NODE_BUDGET");
    cmd->add_option("-o,--output", out_path, "Write the codebook JSON here");
    cmd->add_option("--scan", scan_path, "Write the fixed-length scan CSV (n,lmin,cost)");
    cmd->add_flag("--json", json, "Machine-readable output");
    cmd->callback([this, &json] { run(json); });
  }

  void run(bool json) const {
    const auto k = codebook_kind_from_string(kind);
    if (k == CodebookKind::fixed && (dp || eta_max)) {
      throw ValidationError("--dp and --eta-max apply to --kind prefix only");
    }
    if (k == CodebookKind::prefix && (n_max || !scan_path.empty())) {
      throw ValidationError("--n-max and --scan apply to --kind fixed only");
    }
    std::optional<SymbolSource> src;
    if (!probs_path.empty()) {
      src = symbol_source_from_json(read_json(probs_path));
      if (m && *m != src->m()) throw ValidationError("--m disagrees with --probs length");
    } else if (m) {
      src = SymbolSource::uniform(*m);
    } else {
      throw ValidationError("--m or --probs is required");
    }
    const CostModel cm = cost.resolve();

    ordered_json out = {{"kind", kind}, {"m", src->m()}, {"gamma", cm.gamma().to_string()}};
    std::optional<Codebook> cb;
    if (k == CodebookKind::fixed) {
      auto res = optimize_fixed(*src, cm, n_max);
      out["n_opt"] = res.scan.n_opt;
      if (!scan_path.empty()) {
        std::ostringstream csv;
        csv << "n,lmin,cost\n";
        for (unsigned n = res.scan.n_min; n <= res.scan.n_max; ++n) {
          csv << n << ',' << res.scan.lmin_at(n) << ',' << format_number(res.scan.cost_at(n))
              << '\n';
        }
        write_text(scan_path, csv.str());
      }
      cb = std::move(res.codebook);
    } else {
      PrefixOptions opt;
      opt.dp = dp;
      opt.eta_max = eta_max;
      opt.node_budget = node_budget;
      try {
        auto res = optimize_prefix(*src, cm, opt);
        out["dp"] = res.dp;
        out["search_nodes"] = res.nodes;
        cb = std::move(res.codebook);
      } catch (const BudgetExceeded& e) {
        if (e.incumbent() && !out_path.empty()) {
          write_text(out_path + ".incumbent", codebook_to_json_text(e.incumbent()->codebook) + "\n");
          std::cerr << "best codebook found so far written to " << out_path << ".incumbent\n";
        }
        throw;
      }
    }
    out["metrics"] = metrics_json(evaluate(*src, *cb, cm));
    out["codebook"] = codebook_to_json(*cb);
    if (!out_path.empty()) write_text(out_path, codebook_to_json_text(*cb) + "\n");
    print(out, json);
  }
};

Orientation resolve_orientation(const std::string& costmodel_path, bool invert) {
  if (!costmodel_path.empty()) return orientation_of(cost_model_from_json(read_json(costmodel_path)));
  return invert ? Orientation::inverted : Orientation::canonical;
}

struct EncodeCmd {
  std::string codebook_path, in_path, out_path, costmodel_path;
  bool invert = false;

  void add(CLI::App& app, bool& json) {
    auto* cmd = app.add_subcommand("encode", "Encode whitespace-separated symbols to a bitstream");
    cmd->add_option("-c,--codebook", codebook_path, "Codebook JSON")->required();
    cmd->add_option("-i,--input", in_path, "Symbols text file")->required();
    cmd->add_option("-o,--output", out_path, "Bitstream output file")->required();
    auto* cm = cmd->add_option("--costmodel", costmodel_path,
                               "Cost model JSON; complements bits when its bit-1 is cheaper");
    cmd->add_flag("--invert", invert, "Complement every channel bit")->excludes(cm);
    cmd->add_flag("--json", json, "Machine-readable output");
    cmd->callback([this, &json] {
      const auto cb = codebook_from_json(read_json(codebook_path));
      const auto symbols = parse_symbols(read_text(in_path));
      const auto bs = encode(symbols, cb, resolve_orientation(costmodel_path, invert));
      const auto bytes = bs.to_bytes();
      write_text(out_path, std::string(bytes.begin(), bytes.end()));
      print({{"symbols", symbols.size()}, {"bits", bs.size()}, {"output", out_path}}, json);
    });
  }
};

struct DecodeCmd {
  std::string codebook_path, in_path, out_path, costmodel_path;
  bool invert = false;

  void add(CLI::App& app, bool& json) {
    auto* cmd = app.add_subcommand("decode", "Decode a bitstream back to symbols");
    cmd->add_option("-c,--codebook", codebook_path, "Codebook JSON")->required();
    cmd->add_option("-i,--input", in_path, "Bitstream file")->required();
    cmd->add_option("-o,--output", out_path, "Symbols output file")->required();
    auto* cm = cmd->add_option("--costmodel", costmodel_path,
                               "Cost model JSON; complements bits when its bit-1 is cheaper");
    cmd->add_flag("--invert", invert, "Complement every channel bit")->excludes(cm);
    cmd->add_flag("--json", json, "Machine-readable output");
    cmd->callback([this, &json] {
      const auto cb = codebook_from_json(read_json(codebook_path));
      const auto raw = read_text(in_path);
      const std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
      const auto bs = BitStream::from_bytes(bytes);
      const auto symbols = decode(bs, cb, resolve_orientation(costmodel_path, invert));
      write_text(out_path, format_symbols(symbols));
      print({{"symbols", symbols.size()}, {"bits", bs.size()}, {"output", out_path}}, json);
    });
  }
};

struct SweepCmd {
  std::string var = "gamma", grid, ms = "8", gammas = "5", kinds = "fixed";
  std::string probs_path, out_path;
  std::optional<unsigned> n_max, dp;
  double t0 = 1.0, t1 = 1.0;

  void add(CLI::App& app, bool& json) {
    auto* cmd = app.add_subcommand("sweep", "Tabulate codebook metrics over a parameter grid");
    cmd->add_option("--var", var, "Swept variable")->check(CLI::IsMember({"n", "gamma", "m", "dp"}));
    cmd->add_option("--grid", grid, "a:b, a:b:step, a:b:linN, a:b:logN or a,b,c")->required();
    cmd->add_option("--m", ms, "Fixed M values, comma separated");
    cmd->add_option("--gamma", gammas, "Fixed gamma values, comma separated ('inf' allowed)");
    cmd->add_option("--kinds", kinds, "fixed, prefix or fixed,prefix");
    cmd->add_option("--probs", probs_path, "Source probabilities JSON (pins M)");
    cmd->add_option("--n-max", n_max, "Largest fixed code length scanned");
    cmd->add_option("--dp", dp, "Prefix code tree depth");
    cmd->add_option("--t0", t0, "Duration of bit-0 (s)");
    cmd->add_option("--t1", t1, "Duration of bit-1 (s)");
    cmd->add_option("-o,--output", out_path, "CSV output file (default stdout)");
    cmd->add_flag("--json", json, "Machine-readable output");
    cmd->callback([this, &json] { run(json); });
  }

  void run(bool json) const {
    SweepSpec spec;
    spec.var = sweep_var_from_string(var);
    spec.grid = parse_grid(grid);
    spec.ms.clear();
    for (double v : parse_grid(ms)) {
      if (v < 2 || v != std::floor(v)) throw ValidationError("M values must be integers >= 2", "m");
      spec.ms.push_back(static_cast<std::size_t>(v));
    }
    spec.gammas = parse_grid(gammas);
    spec.kinds.clear();
    std::stringstream ks(kinds);
    for (std::string k; std::getline(ks, k, ',');) spec.kinds.push_back(codebook_kind_from_string(k));
    spec.n_max = n_max;
    spec.dp = dp;
    spec.t0 = t0;
    spec.t1 = t1;
    if (!probs_path.empty()) spec.source = symbol_source_from_json(read_json(probs_path));

    const auto rows = run_sweep(spec);
    const auto csv = sweep_csv(rows, !spec.source || spec.source->is_uniform());
    if (out_path.empty()) {
      if (json) {
        auto arr = ordered_json::array();
        for (const auto& r : rows) {
          arr.push_back({{"kind", to_string(r.kind)},
                         {"m", r.m},
                         {"gamma", format_number(r.gamma)},
                         {"n_or_dp", r.n_or_dp},
                         {"metrics", metrics_json(r.metrics)}});
        }
        std::cout << arr.dump(2) << '\n';
      } else {
        std::cout << csv;
      }
      return;
    }
    write_text(out_path, csv);
    print({{"rows", rows.size()}, {"output", out_path}}, json);
  }
};

struct RfidCmd {
  rfid::RfidLink link;
  std::optional<double> freq, lambda;
  double energy_unit = rfid::kDefaultEnergyUnit;
  std::string emit_path;

  void add(CLI::App& app, bool& json) {
    auto* cmd = app.add_subcommand("rfid-gamma", "Cost ratio of a backscatter RFID link");
    cmd->add_option("--pt", link.p_t, "Reader carrier power (W)")->required();
    cmd->add_option("--gt", link.g_t, "Reader antenna gain (linear)");
    cmd->add_option("--gr", link.g_r, "Tag antenna gain (linear)");
    auto* f = cmd->add_option("--freq", freq, "Carrier frequency (Hz)");
    cmd->add_option("--lambda", lambda, "Carrier wavelength (m)")->excludes(f);
    cmd->add_option("--r", link.r, "Reader-tag distance (m)")->required();
    cmd->add_option("--lp", link.l_p, "Polarization loss (linear, <= 1)");
    cmd->add_option("--rant", link.r_ant, "Antenna resistance (ohm)");
    cmd->add_option("--nstages", link.n_stages, "Rectifier multiplier stages");
    cmd->add_option("--vt", link.v_t, "Diode threshold voltage (V)");
    cmd->add_option("--ptag", link.p_tag, "Tag circuit power (W)")->required();
    cmd->add_option("--t0", link.t0, "Duration of bit-0 (s)")->required();
    cmd->add_option("--t1", link.t1, "Duration of bit-1 (s)")->required();
    cmd->add_option("--mismatch", link.mismatch, "Extra power-transfer factor (<= 1)");
    cmd->add_option("--energy-unit", energy_unit, "Joules per optimizer cost unit");
    cmd->add_option("--emit-costmodel", emit_path, "Write the optimizer cost model JSON here");
    cmd->add_flag("--json", json, "Machine-readable output");
    cmd->callback([this, &json] { run(json); });
  }

  void run(bool json) {
    if (freq) {
      link.lambda = rfid::wavelength_for(*freq);
    } else if (lambda) {
      link.lambda = *lambda;
    } else {
      throw ValidationError("--freq or --lambda is required");
    }
    const auto costs = rfid::tag_costs(link);
    ordered_json out = {{"p_in", rfid::input_power(link)},
                        {"v_ant", rfid::antenna_voltage(link)},
                        {"v_dc", rfid::rectifier_dc_voltage(link)},
                        {"p_in_dc", rfid::harvested_dc_power(link)},
                        {"beta0", costs.beta0},
                        {"beta1", costs.beta1},
                        {"gamma", rfid::cost_ratio(link).to_string()},
                        {"regime", rfid::to_string(costs.regime)}};
    if (!emit_path.empty()) {
      nlohmann::json j = rfid::to_cost_model(link, energy_unit);
      write_text(emit_path, j.dump(2) + "\n");
      out["costmodel"] = emit_path;
    }
    print(out, json);
  }
};

struct ReproduceCmd {
  std::string target;
  std::string out_dir = ".";

  void add(CLI::App& app, bool& json) {
    auto* cmd = app.add_subcommand("reproduce", "Regenerate the reference tables and figure data");
    cmd->add_option("target", target, "table1|table2|table4|fig2|fig3|fig4|fig5|all")->required();
    cmd->add_option("--out-dir", out_dir, "Output directory");
    cmd->add_flag("--json", json, "Machine-readable output");
    cmd->callback([this, &json] {
      std::vector<app::ReproduceTarget> targets;
      if (target == "all") {
        targets = app::all_reproduce_targets();
      } else {
        targets.push_back(app::reproduce_target_from_string(target));
      }
      auto files = ordered_json::array();
      for (auto t : targets) {
        for (const auto& p : app::write_artifacts(app::reproduce(t), out_dir)) {
          files.push_back(p.string());
        }
      }
      if (json) {
        std::cout << ordered_json{{"files", files}}.dump(2) << '\n';
      } else {
        for (const auto& f : files) std::cout << f.get<std::string>() << '\n';
      }
    });
  }
};

struct SelftestCmd {
  std::uint64_t seed = 0;
  std::string fault;
  bool failed = false;

  void add(CLI::App& app, bool& json) {
    auto* cmd = app.add_subcommand("selftest", "Check optimizers against brute-force oracles");
    cmd->add_option("--seed", seed, "Seed for randomized sources")->envname("MECODE_SEED");
    cmd->add_option("--inject-fault", fault, "Corrupt the named property")->group("");
    cmd->add_flag("--json", json, "Machine-readable output");
    cmd->callback([this, &json] {
      app::SelftestOptions opt;
      opt.seed = seed;
      if (!fault.empty()) opt.inject_fault = fault;
      const auto results = app::run_selftest(opt);
      auto arr = ordered_json::array();
      for (const auto& r : results) {
        failed = failed || !r.passed;
        if (json) {
          arr.push_back({{"property", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        } else {
          std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
          if (!r.passed) std::cout << "  (" << r.detail << ")";
          std::cout << '\n';
        }
      }
      if (json) std::cout << ordered_json{{"seed", seed}, {"results", arr}}.dump(2) << '\n';
    });
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-energy source codes for asymmetric binary channels"};
  app.require_subcommand(1);
  bool json = false;

  OptimizeCmd optimize;
  EncodeCmd encode_cmd;
  DecodeCmd decode_cmd;
  SweepCmd sweep;
  RfidCmd rfid_cmd;
  ReproduceCmd reproduce;
  SelftestCmd selftest;
  optimize.add(app, json);
  encode_cmd.add(app, json);
  decode_cmd.add(app, json);
  sweep.add(app, json);
  rfid_cmd.add(app, json);
  reproduce.add(app, json);
  selftest.add(app, json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    if (json) {
      std::cout << ordered_json{{"error", e.what()}}.dump(2) << '\n';
    }
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return selftest.failed ? 1 : 0;
}
