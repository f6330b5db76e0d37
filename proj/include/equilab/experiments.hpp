#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "equilab/config.hpp"
#include "equilab/io.hpp"
#include "equilab/parallel.hpp"

namespace equilab {

inline constexpr const char* kCodeVersion = "equilab 1.0.0";

struct ExperimentConfig {
  std::string name;
  std::size_t N = 0;
  std::size_t M = 0;
  std::uint64_t seed = 0;
  /// Name-specific settings, already merged over the shipped defaults.
  ParamMap params;

  /// N >= 10, M >= 1, every param of this experiment present and no
  /// unknown keys.
  void validate() const;
};

/// The five experiment names, in documentation order.
const std::vector<std::string>& experiment_names();

/// Shipped defaults (config/defaults/<name>.conf, compiled in).
const std::string& default_config_text(const std::string& name);

/// Defaults for `name` with `overrides` (same flat keys, including N, M and
/// seed) applied on top. Throws ValidationError listing valid names for an
/// unknown experiment.
ExperimentConfig make_config(const std::string& name, const ParamMap& overrides = {});

struct ReplicaRecord {
  std::size_t replica = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> stats;
  /// Only filled when keep_raw = true.
  std::vector<double> raw;
};

struct AggregateStat {
  std::string stat;
  double mean = 0.0;
  double min = 0.0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
  double max = 0.0;

  friend bool operator==(const AggregateStat&, const AggregateStat&) = default;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ReplicaRecord> per_replica;
  std::vector<AggregateStat> aggregate;
  /// Experiment-specific headline numbers.
  Json summary = Json::object();
  bool pass = false;
  std::string code_version = kCodeVersion;
  std::vector<std::string> notes;
};

/// Column-wise mean (summed in replica order), min, max and type-7
/// quantiles of every stat, in first-row stat order.
std::vector<AggregateStat> aggregate_rows(const std::vector<ReplicaRecord>& rows);

ExperimentResult run_uniform_ae_ud(const ExperimentConfig& config, unsigned workers = default_workers());
ExperimentResult run_gaussian_not_ud(const ExperimentConfig& config, unsigned workers = default_workers());
ExperimentResult run_gaussian_mod1_ud(const ExperimentConfig& config, unsigned workers = default_workers());
ExperimentResult run_borel_cantelli(const ExperimentConfig& config, unsigned workers = default_workers());
ExperimentResult run_weyl_slln(const ExperimentConfig& config, unsigned workers = default_workers());

/// Dispatch on config.name.
ExperimentResult run(const ExperimentConfig& config, unsigned workers = default_workers());

Json to_json(const ExperimentResult& result);
/// Rebuilds per-replica rows from serialized JSON.
std::vector<ReplicaRecord> replica_rows_from_json(const Json& j);
/// Rebuilds aggregates from serialized JSON.
std::vector<AggregateStat> aggregate_from_json(const Json& j);

/// Per-replica table, a blank line, then the aggregate footer.
std::string to_csv(const ExperimentResult& result);

/// "<name>-seed<seed>-N<N>-M<M>"; append ".json" / ".csv".
std::string result_basename(const ExperimentConfig& config);

}  // namespace equilab
