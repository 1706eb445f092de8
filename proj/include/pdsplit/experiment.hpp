#pragma once

#include "pdsplit/config.hpp"
#include "pdsplit/problem.hpp"
#include "pdsplit/solver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pdsplit {

/// Builds the configured problem (regenerating the dataset from the config;
/// generation is deterministic in the seed, so exported CSVs and in-memory
/// data always agree).
CompositeProblem build_problem(const ExperimentConfig& cfg);

/// Writes dataset.csv and dataset.meta into out_dir.
void run_gen_data(const ExperimentConfig& cfg, const std::string& out_dir);

/// Deterministic baseline: the inertial primal-dual method with exact
/// gradients and no inertia, run to reference_tolerance or
/// reference_iterations. Writes certificate.txt and reference_log.csv into
/// out_dir and returns the certificate.
SolutionCertificate run_reference(const ExperimentConfig& cfg, const std::string& out_dir);

struct SeedOutcome {
  std::uint64_t seed = 0;
  double final_objective = 0.0;
  double final_fp_residual = 0.0;
  double final_dist_euclid = 0.0;
  double final_dist_metric = 0.0;
  int iterations = 0;
  bool diverged = false;
  double wall_ms = 0.0;
};

struct SweepSummary {
  std::vector<SeedOutcome> outcomes;      ///< one row per seed, seed order
  double median_final_dist = 0.0;         ///< over final_dist_euclid
  double median_final_objective = 0.0;
  double alpha_sum = 0.0;                 ///< schedule partial sum over horizon
  double min_gamma = 0.0;
  bool have_reference = false;
};

/// Runs the configured method once per seed, writing run_seed<k>.csv per
/// seed, summary.json and regression_grid.csv (fitted function of the
/// median seed against the noiseless generator on a 200-point grid) into
/// out_dir. reference_path may be empty: distances are then omitted from
/// the logs with a warning on `diag`.
SweepSummary run_solve(const ExperimentConfig& cfg, const std::string& reference_path,
                       const std::string& out_dir, std::ostream& diag,
                       bool override_validators = false);

/// Prints oracle statistics, operator norms, validator verdicts and
/// schedule monitors for the configured run.
void run_audit(const ExperimentConfig& cfg, std::ostream& out);

void write_certificate(const SolutionCertificate& cert, const std::string& path);
SolutionCertificate read_certificate(const std::string& path);

void write_iterate_log(const std::vector<IterateRecord>& records, bool with_distances,
                       const std::string& path);

/// Median with the usual midpoint convention on even counts.
double median(std::vector<double> values);

}  // namespace pdsplit
