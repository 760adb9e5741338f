#pragma once

#include <nlohmann/json.hpp>

#include "qcl/bounds.hpp"
#include "qcl/direct.hpp"
#include "qcl/surrogate.hpp"
#include "qcl/symmetry.hpp"
#include "qcl/variance.hpp"

namespace qcl {

inline constexpr const char* kVersion = "qcl-0.1.0";

/// Long-format result table plus provenance. Every row carries the config
/// hash and the seed that produced it; re-running a config byte-reproduces
/// the CSV, the schema and the summary.
struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::json summary;
  int exit_code = 0;  // 0 ok, 3 when a hard audit check failed

  std::string csv() const;
  /// Writes <name>.csv, <name>.schema.json and <name>.summary.json.
  void write(const std::string& dir) const;
};

/// FNV-1a over the canonical (sorted-key) JSON dump.
std::uint64_t config_hash(const nlohmann::json& config);

/// Built-in defaults per experiment; a user config is merged on top.
nlohmann::json default_config(const std::string& experiment);

/// Ising problem + grid from the config blocks. Exactly one of total_time
/// and dt must be present in the grid block.
LandscapeProblem problem_from_config(const nlohmann::json& config, std::uint64_t seed);

ResultTable run_spectrum(const nlohmann::json& config);
ResultTable run_surrogate_bench(const nlohmann::json& config);
ResultTable run_taylor_order(const nlohmann::json& config);
ResultTable run_bounds_audit(const nlohmann::json& config);
ResultTable run_optimize(const nlohmann::json& config);
ResultTable run_kernel_bandwidth(const nlohmann::json& config);

/// Dispatch on config["experiment"].
ResultTable run_experiment(const nlohmann::json& config);

}  // namespace qcl
