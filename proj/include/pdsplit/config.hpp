#pragma once

#include "pdsplit/dataset.hpp"
#include "pdsplit/oracle.hpp"
#include "pdsplit/schedules.hpp"
#include "pdsplit/solver.hpp"
#include "pdsplit/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pdsplit {

/// Everything needed to reproduce a benchmark run, round-trippable through
/// a flat `[section]` / `key = value` text format. Unknown keys are
/// configuration errors; serialize(parse(text)) is the identity on the
/// parsed content.
struct ExperimentConfig {
  // [data]
  DatasetMeta data;

  // [problem]
  double weight = 0.02;
  std::vector<std::pair<int, int>> groups;  ///< 1-based inclusive ranges; empty = none

  // [solver]
  Method method = Method::pd1;
  double primal_scale = 0.15;  ///< V = primal_scale * Id
  double dual_scale = 0.15;    ///< W_k = dual_scale * Id
  Schedules schedules;

  // [oracle]
  GradientOracle::Kind oracle_kind = GradientOracle::Kind::gaussian_decay;
  double sig = 1.0;
  double batch0 = 1.0;
  double batch_growth = 0.1;
  int batch_size = 8;

  // [run]
  int iterations = 5000;
  double fp_tolerance = 1e-8;
  int log_every = 10;
  std::vector<std::uint64_t> seeds;  ///< oracle seeds for the sweep
  int reference_iterations = 50000;
  double reference_tolerance = 1e-10;
  bool extrapolated_dual = false;
  bool literal_primal = false;

  bool operator==(const ExperimentConfig& other) const;

  PdMetrics make_metrics(const std::vector<int>& dual_dims) const;
  GradientOracle make_oracle(std::uint64_t seed) const;
};

ExperimentConfig default_config();

/// "0..19", "3" or "0,4,7" (ranges and commas combine).
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
Method parse_method_name(const std::string& name);

ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);

ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& cfg, const std::string& path);

}  // namespace pdsplit
