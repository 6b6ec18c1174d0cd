#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mecode::app {

enum class ReproduceTarget { table1, table2, table4, fig2, fig3, fig4, fig5 };

ReproduceTarget reproduce_target_from_string(std::string_view s);
std::string to_string(ReproduceTarget target);
std::vector<ReproduceTarget> all_reproduce_targets();

struct Artifact {
  std::string filename;
  std::string contents;
};

// Deterministic: identical bytes on every run.
std::vector<Artifact> reproduce(ReproduceTarget target);
std::vector<std::filesystem::path> write_artifacts(const std::vector<Artifact>& artifacts,
                                                   const std::filesystem::path& out_dir);

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  std::uint64_t seed = 0;
  // Name of a property whose check is deliberately corrupted.
  std::optional<std::string> inject_fault;
};

std::vector<std::string> selftest_property_names();
std::vector<PropertyResult> run_selftest(const SelftestOptions& options = {});

}  // namespace mecode::app
