#include "doctest.h"

#include "oracles.hpp"
#include "pdsplit/config.hpp"
#include "pdsplit/prox.hpp"
#include "pdsplit/rng.hpp"
#include "pdsplit/solver.hpp"
#include "pdsplit/types.hpp"

#include <cmath>
#include <utility>
#include <vector>

using namespace pdsplit;

namespace {

/// Dataset with an explicit design matrix (bypasses the polynomial sampler).
Dataset manual_dataset(Mat features, Vec labels) {
  Dataset d;
  d.meta.n = static_cast<int>(features.rows());
  d.meta.p = static_cast<int>(features.cols());
  d.inputs = Vec::Zero(features.rows());
  d.features = std::move(features);
  d.labels = std::move(labels);
  return d;
}

/// min (w - c)^2 + lam |w|, solution sign(c) * max(|c| - lam/2, 0).
CompositeProblem scalar_lasso(double c, double lam) {
  auto data = manual_dataset(Mat::Identity(1, 1), Vec::Constant(1, c));
  return assemble_group_lasso_indices(std::move(data), lam, {{0}});
}

CompositeProblem small_group_lasso() {
  DatasetMeta meta;
  meta.n = 10;
  meta.p = 6;
  meta.noise_scale = 0.1;
  meta.seed = 4;
  meta.w_gen = Vec(6);
  meta.w_gen << 2.0, -1.0, 0.0, 0.0, 1.0, 0.5;
  auto data = generate_polynomial_dataset(meta);
  return assemble_group_lasso_indices(std::move(data), 0.05, {{0, 1, 2}, {3, 4, 5}});
}

PdMetrics uniform_metrics(const CompositeProblem& problem, double tau, double sigma) {
  PdMetrics m{Metric::scaled_identity(problem.dim(), tau), {}};
  for (int d : problem.dual_dims()) m.w_metrics.push_back(Metric::scaled_identity(d, sigma));
  return m;
}

Schedules constant_schedules(double gamma, double alpha = 0.0) {
  Schedules s;
  s.gamma_rule = Schedules::GammaRule::constant;
  s.gamma_const = gamma;
  s.alpha_rule =
      alpha == 0.0 ? Schedules::AlphaRule::zero : Schedules::AlphaRule::constant;
  s.alpha_const = alpha;
  return s;
}

}  // namespace

TEST_CASE("inertial extrapolation hand values") {
  Vec w = Vec::Constant(2, 3.0);
  Vec wp = Vec::Constant(2, 1.0);
  CHECK(inertial_point(w, wp, 0.0) == w);
  CHECK(inertial_point(w, wp, 0.5).isApprox(Vec::Constant(2, 4.0)));
  DualBlocks v(std::vector<Vec>{Vec::Constant(1, 2.0)});
  DualBlocks vp(std::vector<Vec>{Vec::Constant(1, 0.0)});
  CHECK(inertial_blocks(v, vp, 0.25)[0][0] == doctest::Approx(2.5));
}

TEST_CASE("one-operator method with no regularizer is exact gradient descent") {
  DatasetMeta meta;
  meta.n = 12;
  meta.p = 4;
  meta.noise_scale = 0.2;
  meta.seed = 3;
  meta.w_gen = Vec(4);
  meta.w_gen << 1.0, -1.0, 0.5, 2.0;
  auto data = generate_polynomial_dataset(meta);
  auto smooth = std::make_shared<const LeastSquares>(data);
  CompositeProblem problem{smooth, Regularizer::zero(4), {}, {}};

  const double gamma = smooth->beta();  // well inside (0, 2 beta)
  PdMetrics metrics{Metric::scaled_identity(4, 1.0), {}};
  auto oracle = GradientOracle::exact();
  StoppingRule stopping;
  stopping.max_iterations = 100;
  stopping.fp_tolerance = 0.0;
  RunOptions options;
  auto result = run_solver(problem, Method::sifb, constant_schedules(gamma), metrics,
                           oracle, stopping, options);
  CHECK(result.iterations == 100);
  CHECK_FALSE(result.diverged);

  Vec w = Vec::Zero(4);
  for (int n = 0; n < 100; ++n) w -= gamma * smooth->gradient(w);
  CHECK((result.state.w - w).norm() < 1e-14 * std::max(1.0, w.norm()));
}

TEST_CASE("one-operator method solves the scalar lasso in closed form") {
  const double c = 1.0, lam = 0.6;
  auto problem = scalar_lasso(c, lam);
  CHECK(problem.smooth->beta() == doctest::Approx(0.5));
  PdMetrics metrics{Metric::scaled_identity(1, 1.0), {}};
  auto oracle = GradientOracle::exact();
  StoppingRule stopping;
  stopping.max_iterations = 500;
  stopping.fp_tolerance = 1e-15;
  auto result = run_solver(problem, Method::sifb, constant_schedules(0.45), metrics,
                           oracle, stopping, RunOptions{});
  const double expect = c - lam / 2.0;  // 0.7
  CHECK(result.state.w[0] == doctest::Approx(expect).epsilon(1e-10));
  CHECK(result.certificate.primal_residual < 1e-9);
  CHECK(result.certificate.fp_residual < 1e-9);
  CHECK(result.stop_reason.find("tolerance") != std::string::npos);
}

TEST_CASE("inertial primal-dual with no composite terms is preconditioned descent") {
  DatasetMeta meta;
  meta.n = 8;
  meta.p = 3;
  meta.noise_scale = 0.1;
  meta.seed = 8;
  meta.w_gen = Vec(3);
  meta.w_gen << 1.0, 2.0, -1.0;
  auto data = generate_polynomial_dataset(meta);
  auto smooth = std::make_shared<const LeastSquares>(data);
  CompositeProblem problem{smooth, Regularizer::zero(3), {}, {}};
  const double tau = smooth->beta();  // beta / ||V|| = 1 > 1/2
  PdMetrics metrics{Metric::scaled_identity(3, tau), {}};
  auto oracle = GradientOracle::exact();
  StoppingRule stopping;
  stopping.max_iterations = 60;
  stopping.fp_tolerance = 0.0;
  auto result = run_solver(problem, Method::pd1, constant_schedules(1.0), metrics, oracle,
                           stopping, RunOptions{});
  Vec w = Vec::Zero(3);
  for (int n = 0; n < 60; ++n) w -= tau * smooth->gradient(w);
  CHECK((result.state.w - w).norm() < 1e-13 * std::max(1.0, w.norm()));
}

TEST_CASE("inertial primal-dual matches a hand-coded two-prox iteration") {
  // Smooth part scaled to numerical irrelevance so the iteration reduces to
  // the classical primal-dual pair for min_w f(w) + g(D w).
  const int p = 4, m = 3;
  Rng rng(71);
  Mat dmat(m, p);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < p; ++j) dmat(i, j) = rng.gaussian();
  auto data = manual_dataset(1e-60 * Mat::Identity(p, p), Vec::Zero(p));
  auto smooth = std::make_shared<const LeastSquares>(std::move(data));

  const double lam_f = 0.3, lam_g = 0.7;
  CompositeProblem problem{smooth,
                           Regularizer::l1(p, lam_f),
                           {{Regularizer::group_l2(m, lam_g), LinearMap::dense(dmat, "d")}},
                           {}};
  const double dnorm = testoracle::svd_norm(dmat);
  const double tau = 0.9 / dnorm, sigma = 0.9 / dnorm;  // tau sigma ||D||^2 = 0.81
  PdMetrics metrics = uniform_metrics(problem, tau, sigma);

  // Hand-coded iteration: dual ascent on the extrapolated primal, then the
  // primal prox, both written out with inline closed forms.
  Vec x = Vec::Zero(p), xbar = Vec::Zero(p);
  Vec y = Vec::Zero(m);
  std::vector<Vec> xs = {x}, ys;
  for (int n = 0; n < 100; ++n) {
    Vec yarg = y + sigma * (dmat * xbar);
    const double ynorm = yarg.norm();
    y = ynorm > lam_g ? Vec(yarg * (lam_g / ynorm)) : yarg;  // project onto lam_g ball
    ys.push_back(y);
    Vec xarg = x - tau * (dmat.transpose() * y);
    Vec xnew(p);
    for (int i = 0; i < p; ++i) {
      const double t = tau * lam_f;
      xnew[i] = xarg[i] > t ? xarg[i] - t : (xarg[i] < -t ? xarg[i] + t : 0.0);
    }
    xbar = 2.0 * xnew - x;
    x = xnew;
    xs.push_back(x);
  }

  // Solver trajectory under the pairing (w_n, v_n) = (x^n, y^(n+1)).
  auto oracle = GradientOracle::exact();
  SolverState state;
  state.w = Vec::Zero(p);
  state.w_prev = state.w;
  state.v = DualBlocks::zeros(problem.dual_dims());
  state.v_prev = state.v;
  for (int n = 0; n < 99; ++n) {
    state = pd1_step(state, problem, metrics, 0.0, oracle, /*extrapolated_dual=*/true);
    CHECK((state.w - xs[n + 1]).norm() < 1e-14 * std::max(1.0, xs[n + 1].norm()));
    CHECK((state.v[0] - ys[n + 1]).norm() < 1e-14 * std::max(1.0, ys[n + 1].norm()));
  }
}

TEST_CASE("the two primal-dual variants agree on the scalar lasso") {
  auto problem = scalar_lasso(1.0, 0.6);
  PdMetrics metrics = uniform_metrics(problem, 0.3, 0.3);
  StoppingRule stopping;
  stopping.max_iterations = 20000;
  stopping.fp_tolerance = 1e-14;
  auto ex1 = GradientOracle::exact();
  auto r1 = run_solver(problem, Method::pd1, constant_schedules(1.0), metrics, ex1,
                       stopping, RunOptions{});
  auto ex2 = GradientOracle::exact();
  auto r2 = run_solver(problem, Method::pd2, constant_schedules(1.0), metrics, ex2,
                       stopping, RunOptions{});
  CHECK(r1.state.w[0] == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(r2.state.w[0] == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(std::abs(r1.state.w[0] - r2.state.w[0]) < 1e-8);
  CHECK(r1.certificate.max_residual() < 1e-8);
  CHECK(r2.certificate.max_residual() < 1e-8);
}

TEST_CASE("the two primal-dual variants agree on a grouped problem") {
  auto problem = small_group_lasso();
  const double beta = problem.smooth->beta();
  const double s = 0.5 * beta;
  PdMetrics metrics = uniform_metrics(problem, s, s);
  StoppingRule stopping;
  stopping.max_iterations = 60000;
  stopping.fp_tolerance = 1e-13;
  RunOptions options;
  options.log_every = 500;
  auto ex1 = GradientOracle::exact();
  auto r1 = run_solver(problem, Method::pd1, constant_schedules(1.0), metrics, ex1,
                       stopping, options);
  auto ex2 = GradientOracle::exact();
  auto r2 = run_solver(problem, Method::pd2, constant_schedules(1.0), metrics, ex2,
                       stopping, options);
  CHECK_FALSE(r1.diverged);
  CHECK_FALSE(r2.diverged);
  CHECK(r1.certificate.fp_residual < 1e-10);
  CHECK(r2.certificate.fp_residual < 1e-10);
  CHECK((r1.state.w - r2.state.w).norm() < 1e-6);
}

TEST_CASE("with f = 0 the dual-argument variants coincide") {
  auto problem = small_group_lasso();
  const double s = 0.5 * problem.smooth->beta();
  PdMetrics metrics = uniform_metrics(problem, s, s);
  auto ex1 = GradientOracle::exact();
  auto ex2 = GradientOracle::exact();
  SolverState a, b;
  a.w = b.w = Vec::Zero(problem.dim());
  a.w_prev = b.w_prev = a.w;
  a.v = b.v = DualBlocks::zeros(problem.dual_dims());
  a.v_prev = b.v_prev = a.v;
  for (int n = 0; n < 25; ++n) {
    a = pd1_step(a, problem, metrics, 0.1, ex1, false);
    b = pd1_step(b, problem, metrics, 0.1, ex2, true);
    CHECK((a.w - b.w).norm() < 1e-13);
    for (std::size_t k = 0; k < a.v.size(); ++k)
      CHECK((a.v[k] - b.v[k]).norm() < 1e-13);
  }
}

TEST_CASE("relaxed variant requires a vanishing primal regularizer") {
  auto problem = scalar_lasso(1.0, 0.6);
  problem.f = Regularizer::abs(0.1);
  PdMetrics metrics = uniform_metrics(problem, 0.3, 0.3);
  auto oracle = GradientOracle::exact();
  SolverState state;
  state.w = Vec::Zero(1);
  state.w_prev = state.w;
  state.v = DualBlocks::zeros(problem.dual_dims());
  state.v_prev = state.v;
  CHECK_THROWS_AS(pd2_step(state, problem, metrics, 0.0, 1.0, oracle), ConfigError);
  StoppingRule stopping;
  stopping.max_iterations = 5;
  CHECK_THROWS_AS(run_solver(problem, Method::pd2, constant_schedules(1.0), metrics,
                             oracle, stopping, RunOptions{}),
                  ConfigError);
}

TEST_CASE("relaxation damps the dual update") {
  auto problem = scalar_lasso(1.0, 0.6);
  PdMetrics metrics = uniform_metrics(problem, 0.3, 0.3);
  auto ex1 = GradientOracle::exact();
  auto ex2 = GradientOracle::exact();
  SolverState full, damped;
  full.w = damped.w = Vec::Zero(1);
  full.w_prev = damped.w_prev = full.w;
  full.v = damped.v = DualBlocks::zeros(problem.dual_dims());
  full.v_prev = damped.v_prev = full.v;
  auto f1 = pd2_step(full, problem, metrics, 0.0, 1.0, ex1);
  auto f2 = pd2_step(damped, problem, metrics, 0.0, 0.5, ex2);
  // lambda = 0.5 moves the dual half as far from the same start.
  CHECK(f2.v[0][0] == doctest::Approx(0.5 * f1.v[0][0]));
}

TEST_CASE("solution certificate vanishes at the unregularized least squares solution") {
  DatasetMeta meta;
  meta.n = 12;
  meta.p = 3;
  meta.noise_scale = 0.2;
  meta.seed = 21;
  meta.w_gen = Vec(3);
  meta.w_gen << 1.0, 0.5, -2.0;
  auto data = generate_polynomial_dataset(meta);
  Mat phi = data.features;
  Vec wstar = (phi.transpose() * phi).ldlt().solve(phi.transpose() * data.labels);
  auto smooth = std::make_shared<const LeastSquares>(std::move(data));
  CompositeProblem problem{smooth, Regularizer::zero(3), {}, {}};
  PdMetrics metrics{Metric::scaled_identity(3, smooth->beta()), {}};
  auto cert = certify_solution(problem, metrics, wstar, DualBlocks{});
  CHECK(cert.primal_residual < 1e-10);
  CHECK(cert.fp_residual < 1e-10);
  CHECK(cert.max_residual() < 1e-10);
  // Away from the solution the residuals are visibly positive.
  auto off = certify_solution(problem, metrics, wstar + Vec::Ones(3), DualBlocks{});
  CHECK(off.primal_residual > 1e-3);
  CHECK(off.fp_residual > 1e-3);
}

TEST_CASE("fixed-point residual vanishes exactly at the composite solution") {
  auto problem = scalar_lasso(1.0, 0.6);
  PdMetrics metrics = uniform_metrics(problem, 0.3, 0.3);
  Vec wstar = Vec::Constant(1, 0.7);
  // Dual solution: v = -grad F(w*) pulled through the single identity map.
  DualBlocks vstar(std::vector<Vec>{Vec(-problem.smooth->gradient(wstar))});
  CHECK(fixed_point_residual(problem, metrics, wstar, vstar) < 1e-14);
  CHECK(fixed_point_residual(problem, metrics, Vec::Zero(1), vstar) > 1e-3);
  auto cert = certify_solution(problem, metrics, wstar, vstar);
  CHECK(cert.primal_residual < 1e-14);
  CHECK(cert.dual_residuals[0] < 1e-14);
}

TEST_CASE("deterministic inertial run is quasi-monotone toward the reference") {
  auto problem = small_group_lasso();
  const double s = 0.5 * problem.smooth->beta();
  PdMetrics metrics = uniform_metrics(problem, s, s);

  // Tight reference first.
  StoppingRule tight;
  tight.max_iterations = 200000;
  tight.fp_tolerance = 1e-13;
  RunOptions quiet;
  quiet.log_every = 1000;
  auto ex = GradientOracle::exact();
  auto ref_run = run_solver(problem, Method::pd1, constant_schedules(1.0), metrics, ex,
                            tight, quiet);
  REQUIRE(ref_run.certificate.fp_residual < 1e-12);
  ReferencePoint ref{ref_run.state.w, ref_run.state.v};

  Schedules sched = constant_schedules(1.0, 0.02);
  StoppingRule stopping;
  stopping.max_iterations = 500;
  stopping.fp_tolerance = 0.0;
  RunOptions options;
  options.store_trajectory = true;
  options.track_oracle_errors = true;
  auto ex2 = GradientOracle::exact();
  auto run = run_solver(problem, Method::pd1, sched, metrics, ex2, stopping, options);
  REQUIRE(run.trajectory.size() == run.alphas.size() + 1);
  for (double e : run.oracle_errors) CHECK(e == 0.0);

  auto saddle =
      SaddleMetric::coupled(metrics.v_metric, metrics.w_metrics, problem.analysis_operator());
  const double violation =
      fejer_violation(run.trajectory, run.alphas, run.oracle_errors, ref, saddle);
  CHECK(violation <= 1e-10);

  auto dists = trajectory_distances(run.trajectory, ref, saddle);
  CHECK(dists.size() == run.trajectory.size());
  CHECK(dists.back() < dists.front());

  // Size mismatch is rejected.
  std::vector<double> short_alphas(run.alphas.begin(), run.alphas.end() - 1);
  CHECK_THROWS_AS(fejer_violation(run.trajectory, short_alphas, run.oracle_errors, ref,
                                  saddle),
                  ConfigError);
}

TEST_CASE("runs are bitwise deterministic in the oracle seed") {
  auto problem = small_group_lasso();
  const double s = 0.5 * problem.smooth->beta();
  PdMetrics metrics = uniform_metrics(problem, s, s);
  StoppingRule stopping;
  stopping.max_iterations = 300;
  stopping.fp_tolerance = 0.0;
  RunOptions options;
  options.log_every = 50;

  auto o1 = GradientOracle::gaussian_decay(1.0, 12345);
  auto r1 = run_solver(problem, Method::pd1, constant_schedules(1.0, 0.01), metrics, o1,
                       stopping, options);
  auto o2 = GradientOracle::gaussian_decay(1.0, 12345);
  auto r2 = run_solver(problem, Method::pd1, constant_schedules(1.0, 0.01), metrics, o2,
                       stopping, options);
  CHECK(r1.state.w == r2.state.w);
  for (std::size_t k = 0; k < r1.state.v.size(); ++k) CHECK(r1.state.v[k] == r2.state.v[k]);
  REQUIRE(r1.records.size() == r2.records.size());
  for (std::size_t i = 0; i < r1.records.size(); ++i) {
    CHECK(r1.records[i].objective == r2.records[i].objective);
    CHECK(r1.records[i].fp_residual == r2.records[i].fp_residual);
  }
  auto o3 = GradientOracle::gaussian_decay(1.0, 54321);
  auto r3 = run_solver(problem, Method::pd1, constant_schedules(1.0, 0.01), metrics, o3,
                       stopping, options);
  CHECK(r1.state.w != r3.state.w);
}

TEST_CASE("a zero-iteration run returns the start point") {
  auto problem = scalar_lasso(1.0, 0.6);
  PdMetrics metrics = uniform_metrics(problem, 0.3, 0.3);
  auto oracle = GradientOracle::exact();
  StoppingRule stopping;
  stopping.max_iterations = 0;
  auto result = run_solver(problem, Method::pd1, constant_schedules(1.0), metrics, oracle,
                           stopping, RunOptions{});
  CHECK(result.iterations == 0);
  CHECK(result.records.empty());
  CHECK(result.state.w == Vec::Zero(1));
  CHECK(result.stop_reason == "no iterations requested");
  CHECK_FALSE(result.diverged);
}

TEST_CASE("runs can start from a supplied point") {
  auto problem = scalar_lasso(1.0, 0.6);
  PdMetrics metrics = uniform_metrics(problem, 0.3, 0.3);
  auto oracle = GradientOracle::exact();
  StoppingRule stopping;
  stopping.max_iterations = 0;
  RunOptions options;
  options.start = Vec::Constant(1, 9.0);
  auto result = run_solver(problem, Method::pd1, constant_schedules(1.0), metrics, oracle,
                           stopping, options);
  CHECK(result.state.w[0] == 9.0);
}

TEST_CASE("divergence is reported gracefully under an override") {
  auto problem = scalar_lasso(1.0, 0.6);
  PdMetrics metrics{Metric::scaled_identity(1, 1.0), {}};
  auto oracle = GradientOracle::exact();
  StoppingRule stopping;
  stopping.max_iterations = 2000;
  stopping.fp_tolerance = 0.0;
  RunOptions options;
  options.override_validators = true;
  // gamma far beyond the admissible cap: |1 - 2 gamma| > 1 diverges.
  auto result = run_solver(problem, Method::sifb, constant_schedules(1000.0), metrics,
                           oracle, stopping, options);
  CHECK(result.diverged);
  CHECK(result.validator_overridden);
  CHECK(result.stop_reason.find("diverged") != std::string::npos);
  CHECK(result.iterations < 2000);
  CHECK(std::isfinite(result.state.w[0]));
}

TEST_CASE("validation failures throw unless overridden") {
  auto problem = scalar_lasso(1.0, 0.6);
  // tau sigma ||D||^2 = 4 >= 1: inadmissible for both primal-dual methods.
  PdMetrics metrics = uniform_metrics(problem, 2.0, 2.0);
  auto oracle = GradientOracle::exact();
  StoppingRule stopping;
  stopping.max_iterations = 3;
  CHECK_THROWS_AS(run_solver(problem, Method::pd1, constant_schedules(1.0), metrics,
                             oracle, stopping, RunOptions{}),
                  ValidationError);
  RunOptions options;
  options.override_validators = true;
  auto result = run_solver(problem, Method::pd1, constant_schedules(1.0), metrics, oracle,
                           stopping, options);
  CHECK(result.validator_overridden);
  CHECK_FALSE(result.validator.ok);
}

TEST_CASE("non-finite oracle draws abort with a numerical error") {
  auto problem = scalar_lasso(1.0, 0.6);
  SolverState state;
  state.w = Vec::Zero(1);
  state.w_prev = state.w;
  Vec bad = Vec::Constant(1, std::numeric_limits<double>::quiet_NaN());
  auto id_resolvent = [](const Vec& x, double) { return x; };
  CHECK_THROWS_AS(
      sifb_step(state, id_resolvent, Metric::scaled_identity(1, 1.0), bad, 0.5, 0.0),
      NumericalError);
  auto nan_resolvent = [](const Vec& x, double) {
    return Vec(Vec::Constant(x.size(), std::numeric_limits<double>::quiet_NaN()));
  };
  CHECK_THROWS_AS(sifb_step(state, nan_resolvent, Metric::scaled_identity(1, 1.0),
                            Vec::Zero(1), 0.5, 0.0),
                  NumericalError);
}

TEST_CASE("one-operator method rejects shapes without a closed-form resolvent") {
  auto oracle = GradientOracle::exact();
  StoppingRule stopping;
  stopping.max_iterations = 1;

  // General dense analysis operator: no coordinate groups.
  auto data = manual_dataset(Mat::Identity(2, 2), Vec::Ones(2));
  auto smooth = std::make_shared<const LeastSquares>(std::move(data));
  Mat d(2, 2);
  d << 1.0, 1.0, 0.0, 1.0;
  CompositeProblem dense_problem{
      smooth, Regularizer::zero(2),
      {{Regularizer::group_l2(2, 0.1), LinearMap::dense(d, "d")}}, {}};
  PdMetrics metrics{Metric::scaled_identity(2, 1.0), {Metric::scaled_identity(2, 1.0)}};
  CHECK_THROWS_AS(run_solver(dense_problem, Method::sifb, constant_schedules(0.5), metrics,
                             oracle, stopping, RunOptions{}),
                  ConfigError);

  // Overlapping coordinate groups.
  auto data2 = manual_dataset(Mat::Identity(3, 3), Vec::Ones(3));
  auto overlapping =
      assemble_group_lasso_indices(std::move(data2), 0.1, {{0, 1}, {1, 2}});
  PdMetrics m3{Metric::scaled_identity(3, 1.0), {}};
  CHECK_THROWS_AS(run_solver(overlapping, Method::sifb, constant_schedules(0.5), m3,
                             oracle, stopping, RunOptions{}),
                  ConfigError);

  // Grouped shrinkage with a nonzero f.
  auto with_f = scalar_lasso(1.0, 0.6);
  with_f.f = Regularizer::abs(0.1);
  PdMetrics m1{Metric::scaled_identity(1, 1.0), {}};
  CHECK_THROWS_AS(run_solver(with_f, Method::sifb, constant_schedules(0.5), m1, oracle,
                             stopping, RunOptions{}),
                  ConfigError);

  // Grouped shrinkage with a non-uniform preconditioner.
  auto plain = scalar_lasso(1.0, 0.6);
  Vec diag(1);
  diag << 0.5;
  PdMetrics m2{Metric::diagonal(diag), {}};
  CHECK_THROWS_AS(run_solver(plain, Method::sifb, constant_schedules(0.2), m2, oracle,
                             stopping, RunOptions{}),
                  ConfigError);
}

TEST_CASE("primal-dual validator truth table") {
  auto problem = scalar_lasso(1.0, 0.6);  // single identity term, ||D|| = 1
  auto op = problem.analysis_operator();

  // Boundary: tau sigma ||D||^2 = 1 exactly fails the strict inequality.
  {
    PdMetrics m = uniform_metrics(problem, 1.0, 1.0);
    auto r = validate_pd1(m, op, 200.0, 1e-3);
    CHECK_FALSE(r.ok);
    REQUIRE(!r.failures.empty());
    CHECK(r.failures[0].find("< 1") != std::string::npos);
  }
  // Just inside with a large beta: admissible.
  {
    PdMetrics m = uniform_metrics(problem, 0.99, 1.0);
    auto r = validate_pd1(m, op, 200.0, 1e-3);
    CHECK(r.ok);
    CHECK(r.terms_sum == doctest::Approx(0.99).epsilon(1e-6));
    CHECK(r.gamma == doctest::Approx((1.0 - std::sqrt(r.terms_sum)) * 200.0 / 0.99)
                         .epsilon(1e-9));
  }
  // Cocoercivity margin at or below one half fails.
  {
    PdMetrics m = uniform_metrics(problem, 0.25, 0.25);  // sum = 1/16, sqrt = 1/4
    // gamma = (3/4) beta / (1/4) = 3 beta.
    auto r = validate_pd1(m, op, 0.16, 1e-3);  // gamma = 0.48
    CHECK_FALSE(r.ok);
    auto r2 = validate_pd1(m, op, 0.18, 1e-3);  // gamma = 0.54
    CHECK(r2.ok);
  }
  // Epsilon must stay below min{1, gamma}.
  {
    PdMetrics m = uniform_metrics(problem, 0.25, 0.25);
    auto r = validate_pd1(m, op, 0.2, 1e-3);  // gamma = 0.6
    CHECK(r.ok);
    auto r2 = validate_pd1(m, op, 0.2, 0.62);
    CHECK_FALSE(r2.ok);
    auto r3 = validate_pd1(m, op, 0.2, 0.58);
    CHECK(r3.ok);
  }

  // Relaxed variant: beta / ||V|| must exceed one half.
  {
    PdMetrics m = uniform_metrics(problem, 1.0, 0.25);
    auto fail = validate_pd2(m, op, 0.4, 1e-3);
    CHECK_FALSE(fail.ok);
    auto edge = validate_pd2(m, op, 0.5, 1e-3);
    CHECK_FALSE(edge.ok);
    auto pass = validate_pd2(m, op, 0.6, 1e-3);
    CHECK(pass.ok);
    // epsilon below min{1, beta}.
    auto eps_bad = validate_pd2(m, op, 0.6, 0.6);
    CHECK_FALSE(eps_bad.ok);
  }
}

TEST_CASE("one-operator validator truth table") {
  auto u = Metric::scaled_identity(2, 1.0);
  const double beta = 1.0;
  Schedules s;
  s.gamma_rule = Schedules::GammaRule::constant;
  s.epsilon = 0.1;
  // cap = (2 - 0.1) * 1 / 1 = 1.9; the closed interval admits both endpoints.
  s.gamma_const = 1.9;
  CHECK(validate_sifb(u, beta, s, 10).ok);
  s.gamma_const = 1.9 + 1e-9;
  CHECK_FALSE(validate_sifb(u, beta, s, 10).ok);
  s.gamma_const = 0.1;
  CHECK(validate_sifb(u, beta, s, 10).ok);
  s.gamma_const = 0.0999;
  CHECK_FALSE(validate_sifb(u, beta, s, 10).ok);

  s.gamma_const = 1.0;
  s.alpha_rule = Schedules::AlphaRule::constant;
  s.alpha_const = 0.9;  // 1 - epsilon exactly
  CHECK(validate_sifb(u, beta, s, 10).ok);
  s.alpha_const = 0.91;
  CHECK_FALSE(validate_sifb(u, beta, s, 10).ok);
  s.alpha_const = -0.1;
  CHECK_FALSE(validate_sifb(u, beta, s, 10).ok);

  s.alpha_const = 0.5;
  s.epsilon = 0.0;
  CHECK_FALSE(validate_sifb(u, beta, s, 10).ok);
}

TEST_CASE("validator report summary mentions every failure") {
  auto problem = scalar_lasso(1.0, 0.6);
  auto op = problem.analysis_operator();
  PdMetrics m = uniform_metrics(problem, 2.0, 2.0);
  auto r = validate_pd1(m, op, 0.01, 2.0);
  CHECK_FALSE(r.ok);
  auto text = r.summary();
  CHECK(text.find("FAIL") != std::string::npos);
  CHECK(text.find("condition violated") != std::string::npos);
}

TEST_CASE("harmonic step sizes with squared inertia run the grouped problem") {
  // The benchmark configuration in miniature: harmonic gamma feeding its
  // square as inertia, constant uniform preconditioners, noisy oracle.
  auto problem = small_group_lasso();
  const double s = 0.5 * problem.smooth->beta();
  PdMetrics metrics = uniform_metrics(problem, s, s);
  Schedules sched;
  sched.gamma_rule = Schedules::GammaRule::harmonic;
  sched.gamma_c = 15.0;
  sched.gamma_n0 = 100.0;
  sched.alpha_rule = Schedules::AlphaRule::gamma_squared;
  StoppingRule stopping;
  stopping.max_iterations = 2000;
  stopping.fp_tolerance = 0.0;
  RunOptions options;
  options.log_every = 100;
  auto oracle = GradientOracle::gaussian_decay(1.0, 7);
  auto result = run_solver(problem, Method::pd1, sched, metrics, oracle, stopping, options);
  CHECK_FALSE(result.diverged);
  CHECK(result.iterations == 2000);
  CHECK(result.records.size() == 20);
  CHECK(result.records.back().objective < result.records.front().objective);
  CHECK(result.alpha_sum == doctest::Approx(sched.alpha_partial_sum(2000)));
  CHECK(result.min_gamma == doctest::Approx(15.0 / (1999.0 + 100.0)));
  // Objective settles near the exact-solver optimum.
  StoppingRule tight;
  tight.max_iterations = 100000;
  tight.fp_tolerance = 1e-12;
  auto ex = GradientOracle::exact();
  auto ref = run_solver(problem, Method::pd1, constant_schedules(1.0), metrics, ex, tight,
                        options);
  CHECK(result.records.back().objective ==
        doctest::Approx(ref.certificate.objective).epsilon(0.05));
}
