#include "pdsplit/experiment.hpp"

#include "pdsplit/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pdsplit {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

Vec parse_vector_line(const std::string& v) {
  std::vector<double> vals;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) vals.push_back(parse_double(tok));
  return Eigen::Map<const Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::string serialize_vector_line(const Vec& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

double median(std::vector<double> values) {
  require(!values.empty(), "median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

CompositeProblem build_problem(const ExperimentConfig& cfg) {
  Dataset data = generate_polynomial_dataset(cfg.data);
  if (cfg.groups.empty()) {
    auto smooth = std::make_shared<const LeastSquares>(std::move(data));
    return CompositeProblem{smooth, Regularizer::zero(cfg.data.p), {}, {}};
  }
  return assemble_group_lasso(std::move(data), cfg.weight, cfg.groups);
}

void run_gen_data(const ExperimentConfig& cfg, const std::string& out_dir) {
  const Dataset data = generate_polynomial_dataset(cfg.data);
  write_dataset_csv(data, join_path(out_dir, "dataset.csv"));
  write_dataset_meta(data.meta, join_path(out_dir, "dataset.meta"));
}

void write_certificate(const SolutionCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  out << "objective=" << format_double(cert.objective) << "\n";
  out << "primal_residual=" << format_double(cert.primal_residual) << "\n";
  out << "fp_residual=" << format_double(cert.fp_residual) << "\n";
  out << "dual_residuals=";
  for (std::size_t k = 0; k < cert.dual_residuals.size(); ++k) {
    if (k) out << ",";
    out << format_double(cert.dual_residuals[k]);
  }
  out << "\n";
  out << "w=" << serialize_vector_line(cert.w) << "\n";
  for (std::size_t k = 0; k < cert.v.size(); ++k)
    out << "v_" << k << "=" << serialize_vector_line(cert.v[k]) << "\n";
  require(out.good(), "write failed: " + path);
}

SolutionCertificate read_certificate(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open certificate: " + path);
  SolutionCertificate cert;
  std::string line;
  std::vector<std::pair<int, Vec>> vblocks;
  bool have_w = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, "malformed certificate line: '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "objective") cert.objective = parse_double(val);
    else if (key == "primal_residual") cert.primal_residual = parse_double(val);
    else if (key == "fp_residual") cert.fp_residual = parse_double(val);
    else if (key == "dual_residuals") {
      if (!val.empty()) {
        const Vec r = parse_vector_line(val);
        cert.dual_residuals.assign(r.data(), r.data() + r.size());
      }
    } else if (key == "w") {
      cert.w = parse_vector_line(val);
      have_w = true;
    } else if (key.rfind("v_", 0) == 0) {
      vblocks.emplace_back(std::stoi(key.substr(2)), parse_vector_line(val));
    } else {
      throw ConfigError("unknown certificate key: '" + key + "'");
    }
  }
  require(have_w, "certificate missing w: " + path);
  std::sort(vblocks.begin(), vblocks.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, v] : vblocks) cert.v.blocks.push_back(std::move(v));
  return cert;
}

void write_iterate_log(const std::vector<IterateRecord>& records, bool with_distances,
                       const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  if (with_distances)
    out << "n,objective,fp_residual,dist_ref_euclid,dist_ref_metric,gamma,alpha,wall_ms\n";
  else
    out << "n,objective,fp_residual,gamma,alpha,wall_ms\n";
  for (const auto& r : records) {
    out << r.n << "," << format_double(r.objective) << "," << format_double(r.fp_residual);
    if (with_distances)
      out << "," << format_double(r.dist_ref_euclid) << ","
          << format_double(r.dist_ref_metric);
    out << "," << format_double(r.gamma) << "," << format_double(r.alpha) << ","
        << format_double(r.wall_ms) << "\n";
  }
  require(out.good(), "write failed: " + path);
}

SolutionCertificate run_reference(const ExperimentConfig& cfg, const std::string& out_dir) {
  const CompositeProblem problem = build_problem(cfg);
  const PdMetrics metrics = cfg.make_metrics(problem.dual_dims());

  Schedules schedules = cfg.schedules;
  schedules.alpha_rule = Schedules::AlphaRule::zero;

  GradientOracle oracle = GradientOracle::exact();
  StoppingRule stopping;
  stopping.max_iterations = cfg.reference_iterations;
  stopping.fp_tolerance = cfg.reference_tolerance;
  RunOptions options;
  options.log_every = cfg.log_every;
  options.extrapolated_dual = cfg.extrapolated_dual;

  const RunResult result = run_solver(problem, Method::pd1, schedules, metrics, oracle,
                                      stopping, options);
  require(!result.diverged, "reference run diverged: " + result.stop_reason);
  write_certificate(result.certificate, join_path(out_dir, "certificate.txt"));
  write_iterate_log(result.records, false, join_path(out_dir, "reference_log.csv"));
  return result.certificate;
}

SweepSummary run_solve(const ExperimentConfig& cfg, const std::string& reference_path,
                       const std::string& out_dir, std::ostream& diag,
                       bool override_validators) {
  const CompositeProblem problem = build_problem(cfg);
  const PdMetrics metrics = cfg.make_metrics(problem.dual_dims());

  SweepSummary summary;
  std::optional<ReferencePoint> reference;
  if (!reference_path.empty()) {
    const SolutionCertificate cert = read_certificate(reference_path);
    require(cert.w.size() == problem.dim(), "reference certificate dimension mismatch");
    reference = ReferencePoint{cert.w, cert.v};
    summary.have_reference = true;
  } else {
    diag << "warning: no reference certificate given, distance columns omitted from logs\n";
  }

  StoppingRule stopping;
  stopping.max_iterations = cfg.iterations;
  stopping.fp_tolerance = cfg.fp_tolerance;
  RunOptions options;
  options.log_every = cfg.log_every;
  options.extrapolated_dual = cfg.extrapolated_dual;
  options.literal_primal = cfg.literal_primal;
  options.override_validators = override_validators;

  std::vector<Vec> finals;
  for (const std::uint64_t seed : cfg.seeds) {
    GradientOracle oracle = cfg.make_oracle(seed);
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult result =
        run_solver(problem, cfg.method, cfg.schedules, metrics, oracle, stopping, options,
                   reference ? &*reference : nullptr);
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    write_iterate_log(result.records, summary.have_reference,
                      join_path(out_dir, "run_seed" + std::to_string(seed) + ".csv"));

    SeedOutcome outcome;
    outcome.seed = seed;
    outcome.iterations = result.iterations;
    outcome.diverged = result.diverged;
    outcome.wall_ms = wall;
    outcome.final_objective = result.certificate.objective;
    outcome.final_fp_residual = result.certificate.fp_residual;
    if (reference) {
      double d2 = (result.state.w - reference->w).squaredNorm();
      for (std::size_t k = 0; k < result.state.v.size(); ++k)
        d2 += (result.state.v[k] - reference->v[k]).squaredNorm();
      outcome.final_dist_euclid = std::sqrt(d2);
      outcome.final_dist_metric =
          result.records.empty() ? 0.0 : result.records.back().dist_ref_metric;
    }
    summary.outcomes.push_back(outcome);
    finals.push_back(result.state.w);
    summary.alpha_sum = result.alpha_sum;
    summary.min_gamma = result.min_gamma;
    if (result.diverged) diag << "seed " << seed << ": " << result.stop_reason << "\n";
  }

  std::vector<double> dists, objectives;
  for (const auto& o : summary.outcomes) {
    dists.push_back(o.final_dist_euclid);
    objectives.push_back(o.final_objective);
  }
  summary.median_final_objective = median(objectives);
  summary.median_final_dist = summary.have_reference ? median(dists) : 0.0;

  // Representative fit: the seed with the lower-median final score.
  const std::vector<double>& score = summary.have_reference ? dists : objectives;
  std::vector<std::size_t> order(score.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&score](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  const Vec& w_fit = finals[order[(order.size() - 1) / 2]];

  {
    std::ofstream grid(join_path(out_dir, "regression_grid.csv"));
    require(grid.good(), "cannot open for writing: regression_grid.csv");
    grid << "x,f_hat,f_true\n";
    const int points = 200;
    for (int i = 0; i < points; ++i) {
      const double x =
          cfg.data.a + (cfg.data.b - cfg.data.a) * static_cast<double>(i) / (points - 1);
      const Vec phi = polynomial_features(x, cfg.data.p);
      grid << format_double(x) << "," << format_double(phi.dot(w_fit)) << ","
           << format_double(phi.dot(cfg.data.w_gen)) << "\n";
    }
    require(grid.good(), "write failed: regression_grid.csv");
  }

  {
    nlohmann::json j;
    j["method"] = method_name(cfg.method);
    j["iterations"] = cfg.iterations;
    j["have_reference"] = summary.have_reference;
    j["alpha_partial_sum"] = summary.alpha_sum;
    j["min_gamma"] = summary.min_gamma;
    j["median_final_dist_euclid"] = summary.median_final_dist;
    j["median_final_objective"] = summary.median_final_objective;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& o : summary.outcomes) {
      nlohmann::json row;
      row["seed"] = o.seed;
      row["final_objective"] = o.final_objective;
      row["final_fp_residual"] = o.final_fp_residual;
      row["final_dist_euclid"] = o.final_dist_euclid;
      row["final_dist_metric"] = o.final_dist_metric;
      row["iterations"] = o.iterations;
      row["diverged"] = o.diverged;
      row["wall_ms"] = o.wall_ms;
      rows.push_back(row);
    }
    j["seed_runs"] = rows;
    std::ofstream out(join_path(out_dir, "summary.json"));
    require(out.good(), "cannot open for writing: summary.json");
    out << j.dump(2) << "\n";
    require(out.good(), "write failed: summary.json");
  }
  return summary;
}

void run_audit(const ExperimentConfig& cfg, std::ostream& out) {
  const CompositeProblem problem = build_problem(cfg);
  const PdMetrics metrics = cfg.make_metrics(problem.dual_dims());
  const BlockAnalysisOperator op = problem.analysis_operator();
  const double beta = problem.smooth->beta();

  out << "dataset: n = " << cfg.data.n << ", p = " << cfg.data.p << ", interval = ["
      << format_double(cfg.data.a) << ", " << format_double(cfg.data.b) << "]\n";
  out << "design norm estimate = " << format_double(problem.smooth->design_norm())
      << ", beta = " << format_double(beta) << "\n";

  out << "operators:\n";
  for (std::size_t k = 0; k < problem.terms.size(); ++k) {
    const auto& t = problem.terms[k];
    out << "  [" << k << "] " << t.op.label() << ": " << t.op.in_dim() << " -> "
        << t.op.out_dim() << ", norm estimate = " << format_double(t.op.norm_estimate())
        << ", adjoint consistency = "
        << format_double(adjoint_consistency_check(t.op, 25, 101 + k)) << "\n";
  }
  if (!problem.terms.empty()) {
    const auto terms = composite_norm_terms(metrics.v_metric, metrics.w_metrics, op);
    out << "composite norm terms:";
    double sum = 0.0;
    for (double t : terms) {
      out << " " << format_double(t);
      sum += t;
    }
    out << " (sum = " << format_double(sum) << ")\n";
  }

  switch (cfg.method) {
    case Method::sifb: {
      const auto rep = validate_sifb(metrics.v_metric, beta, cfg.schedules, cfg.iterations);
      out << "validator (sifb): " << rep.summary() << "\n";
      break;
    }
    case Method::pd1: {
      const auto rep = validate_pd1(metrics, op, beta, cfg.schedules.epsilon);
      out << "validator (pd1): " << rep.summary() << "\n";
      break;
    }
    case Method::pd2: {
      const auto rep = validate_pd2(metrics, op, beta, cfg.schedules.epsilon);
      out << "validator (pd2): " << rep.summary() << "\n";
      break;
    }
  }

  out << "schedules: min gamma over horizon = "
      << format_double(cfg.schedules.min_gamma(cfg.iterations))
      << ", alpha partial sum = " << format_double(cfg.schedules.alpha_partial_sum(cfg.iterations))
      << ", epsilon = " << format_double(cfg.schedules.epsilon) << "\n";

  GradientOracle oracle = cfg.make_oracle(cfg.seeds.empty() ? 0 : cfg.seeds.front());
  const Vec probe = Vec::Zero(problem.dim());
  const int draws = 2000;
  const auto [mean_dev, mean_sq] = empirical_oracle_audit(oracle, *problem.smooth, probe, 1, draws);
  out << "oracle (" << oracle.kind_name() << "): over " << draws
      << " draws at w = 0, query index 1: ||mean - gradient|| = " << format_double(mean_dev)
      << ", mean squared deviation = " << format_double(mean_sq) << "\n";
  out << "oracle variance summable along iterations: "
      << (oracle.variance_summable() ? "yes" : "no (convergence conditions violated)") << "\n";
}

}  // namespace pdsplit
