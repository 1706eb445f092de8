#include "pdsplit/config.hpp"
#include "pdsplit/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "experiment config file")->required();
  cmd->add_option("-o,--out", args.out_dir, "output directory (default: current)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pdsplit: stochastic inertial splitting solvers for composite regression\n"
      "benchmarks (grouped sparse polynomial fitting)"};
  app.require_subcommand(1);

  CommonArgs gen_args, ref_args, solve_args, audit_args;

  auto* gen = app.add_subcommand("gen-data", "write dataset.csv and dataset.meta");
  add_common(gen, gen_args);

  auto* ref = app.add_subcommand(
      "reference",
      "deterministic baseline run (exact gradients, no inertia); writes "
      "certificate.txt and reference_log.csv");
  add_common(ref, ref_args);
  int ref_iterations = -1;
  double ref_tol = -1.0;
  ref->add_option("--iterations", ref_iterations, "override reference iteration budget");
  ref->add_option("--tol", ref_tol, "override reference fixed-point tolerance");

  auto* solve = app.add_subcommand(
      "solve", "seed sweep of the configured method; writes run_seed<k>.csv, "
               "summary.json and regression_grid.csv");
  add_common(solve, solve_args);
  std::string reference_path;
  std::string seeds_override, method_override;
  int iterations_override = -1, log_every_override = -1;
  double sig_override = -1.0;
  bool override_validators = false, pd2_literal = false, pd1_extrapolated = false;
  solve->add_option("-r,--reference", reference_path,
                    "reference certificate for distance columns");
  solve->add_option("--iterations", iterations_override, "override iteration budget");
  solve->add_option("--seeds", seeds_override, "override seed list, e.g. 0..19 or 1,4,9");
  solve->add_option("--method", method_override, "override method: sifb, pd1 or pd2");
  solve->add_option("--sig", sig_override, "override oracle noise scale");
  solve->add_option("--log-every", log_every_override, "override logging stride");
  solve->add_flag("--override-validators", override_validators,
                  "run even if step-size conditions fail (unsafe)");
  solve->add_flag("--pd2-literal", pd2_literal,
                  "use the unscaled final primal update in pd2 (comparison only)");
  solve->add_flag("--pd1-extrapolated", pd1_extrapolated,
                  "use the extrapolated dual argument in pd1 (equal to the default "
                  "form when f = 0)");

  auto* audit = app.add_subcommand(
      "audit", "print oracle statistics, operator norms and validator verdicts");
  add_common(audit, audit_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (gen->parsed()) {
      pdsplit::run_gen_data(pdsplit::load_config(gen_args.config_path), gen_args.out_dir);
      std::cout << "wrote dataset.csv and dataset.meta to " << gen_args.out_dir << "\n";
      return kExitOk;
    }
    if (ref->parsed()) {
      pdsplit::ExperimentConfig cfg = pdsplit::load_config(ref_args.config_path);
      if (ref_iterations >= 0) cfg.reference_iterations = ref_iterations;
      if (ref_tol >= 0.0) cfg.reference_tolerance = ref_tol;
      const auto cert = pdsplit::run_reference(cfg, ref_args.out_dir);
      std::cout << "reference: objective = " << pdsplit::format_double(cert.objective)
                << ", fp residual = " << pdsplit::format_double(cert.fp_residual)
                << ", primal residual = " << pdsplit::format_double(cert.primal_residual)
                << "\n";
      return kExitOk;
    }
    if (solve->parsed()) {
      pdsplit::ExperimentConfig cfg = pdsplit::load_config(solve_args.config_path);
      if (iterations_override >= 0) cfg.iterations = iterations_override;
      if (log_every_override >= 1) cfg.log_every = log_every_override;
      if (sig_override >= 0.0) cfg.sig = sig_override;
      if (!seeds_override.empty()) cfg.seeds = pdsplit::parse_seed_list(seeds_override);
      if (!method_override.empty()) cfg.method = pdsplit::parse_method_name(method_override);
      if (pd2_literal) cfg.literal_primal = true;
      if (pd1_extrapolated) cfg.extrapolated_dual = true;
      const auto summary = pdsplit::run_solve(cfg, reference_path, solve_args.out_dir,
                                              std::cerr, override_validators);
      std::cout << "solve (" << pdsplit::method_name(cfg.method) << "): "
                << summary.outcomes.size() << " seeds, median final objective = "
                << pdsplit::format_double(summary.median_final_objective);
      if (summary.have_reference)
        std::cout << ", median final distance = "
                  << pdsplit::format_double(summary.median_final_dist);
      std::cout << "\n";
      for (const auto& o : summary.outcomes)
        if (o.diverged) {
          std::cerr << "divergence detected (seed " << o.seed << ")\n";
          return kExitRuntime;
        }
      return kExitOk;
    }
    if (audit->parsed()) {
      pdsplit::run_audit(pdsplit::load_config(audit_args.config_path), std::cout);
      return kExitOk;
    }
  } catch (const pdsplit::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const pdsplit::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pdsplit::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
