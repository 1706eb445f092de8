#include "pdsplit/solver.hpp"

#include "pdsplit/dataset.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace pdsplit {

std::string method_name(Method m) {
  switch (m) {
    case Method::sifb: return "sifb";
    case Method::pd1: return "pd1";
    case Method::pd2: return "pd2";
  }
  return "?";
}

Vec inertial_point(const Vec& w, const Vec& w_prev, double alpha) {
  if (alpha == 0.0) return w;
  return w + alpha * (w - w_prev);
}

DualBlocks inertial_blocks(const DualBlocks& v, const DualBlocks& v_prev, double alpha) {
  if (alpha == 0.0) return v;
  DualBlocks d = v;
  for (std::size_t k = 0; k < d.size(); ++k) d[k] += alpha * (v[k] - v_prev[k]);
  return d;
}

namespace {

void check_finite(const Vec& x, const char* producer, int n) {
  if (!x.allFinite())
    throw NumericalError(std::string(producer) + " produced non-finite values at iteration " +
                         std::to_string(n));
}

void check_finite(const DualBlocks& x, const char* producer, int n) {
  if (!x.allFinite())
    throw NumericalError(std::string(producer) + " produced non-finite values at iteration " +
                         std::to_string(n));
}

/// pd1 iteration body once the oracle draw at the inertial point is fixed.
SolverState pd1_apply(const SolverState& state, const CompositeProblem& problem,
                      const PdMetrics& metrics, double alpha, const Vec& draw,
                      bool extrapolated_dual) {
  const Vec u = inertial_point(state.w, state.w_prev, alpha);
  const DualBlocks d = inertial_blocks(state.v, state.v_prev, alpha);

  Vec adj = Vec::Zero(problem.dim());
  for (std::size_t k = 0; k < problem.terms.size(); ++k)
    adj += problem.terms[k].op.apply_adjoint(d[k]);
  const Vec h = metrics.v_metric.apply(adj + draw);
  check_finite(h, "primal-dual forward step", state.n);

  SolverState next;
  next.n = state.n + 1;
  next.w_prev = state.w;
  next.v_prev = state.v;

  next.w = problem.f.prox_in_metric(u - h, metrics.v_metric);
  check_finite(next.w, "primal prox update", state.n);

  const Vec dual_base = extrapolated_dual ? Vec(2.0 * next.w - u) : Vec(u - 2.0 * h);
  next.v.blocks.resize(problem.terms.size());
  for (std::size_t k = 0; k < problem.terms.size(); ++k) {
    const auto& term = problem.terms[k];
    const Vec arg = d[k] + metrics.w_metrics[k].apply(term.op.apply(dual_base));
    next.v[k] = term.g.prox_conjugate_in_metric(arg, metrics.w_metrics[k]);
    check_finite(next.v[k], "dual prox update", state.n);
  }
  return next;
}

/// pd2 iteration body once the oracle draw is fixed.
SolverState pd2_apply(const SolverState& state, const CompositeProblem& problem,
                      const PdMetrics& metrics, double alpha, double lambda,
                      const Vec& draw, bool literal_primal) {
  const Vec u = inertial_point(state.w, state.w_prev, alpha);
  const DualBlocks d = inertial_blocks(state.v, state.v_prev, alpha);

  Vec adj = Vec::Zero(problem.dim());
  for (std::size_t k = 0; k < problem.terms.size(); ++k)
    adj += problem.terms[k].op.apply_adjoint(d[k]);
  const Vec va = metrics.v_metric.apply(draw);
  const Vec s = u - va - metrics.v_metric.apply(adj);
  check_finite(s, "relaxed forward step", state.n);

  SolverState next;
  next.n = state.n + 1;
  next.w_prev = state.w;
  next.v_prev = state.v;
  next.v.blocks.resize(problem.terms.size());

  Vec adj_q = Vec::Zero(problem.dim());
  for (std::size_t k = 0; k < problem.terms.size(); ++k) {
    const auto& term = problem.terms[k];
    const Vec arg = d[k] + metrics.w_metrics[k].apply(term.op.apply(s));
    const Vec q = term.g.prox_conjugate_in_metric(arg, metrics.w_metrics[k]);
    check_finite(q, "relaxed dual prox update", state.n);
    next.v[k] = state.v[k] + lambda * (q - state.v[k]);
    adj_q += term.op.apply_adjoint(q);
  }
  next.w = u - va - (literal_primal ? adj_q : metrics.v_metric.apply(adj_q));
  check_finite(next.w, "relaxed primal update", state.n);
  return next;
}

bool groups_disjoint(const std::vector<std::vector<int>>& groups) {
  std::vector<int> all;
  for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

}  // namespace

SolverState sifb_step(const SolverState& state, const ScaledResolvent& resolvent,
                      const Metric& u_metric, const Vec& oracle_draw, double gamma,
                      double alpha) {
  const Vec z = inertial_point(state.w, state.w_prev, alpha);
  const Vec arg = z - gamma * u_metric.apply(oracle_draw);
  check_finite(arg, "one-operator forward step", state.n);
  SolverState next;
  next.n = state.n + 1;
  next.w_prev = state.w;
  next.v_prev = state.v;
  next.v = state.v;
  next.w = resolvent(arg, gamma);
  check_finite(next.w, "one-operator resolvent step", state.n);
  return next;
}

SolverState pd1_step(const SolverState& state, const CompositeProblem& problem,
                     const PdMetrics& metrics, double alpha, GradientOracle& oracle,
                     bool extrapolated_dual) {
  const Vec u = inertial_point(state.w, state.w_prev, alpha);
  const Vec draw = oracle.draw(*problem.smooth, u, state.n + 1);
  return pd1_apply(state, problem, metrics, alpha, draw, extrapolated_dual);
}

SolverState pd2_step(const SolverState& state, const CompositeProblem& problem,
                     const PdMetrics& metrics, double alpha, double lambda,
                     GradientOracle& oracle, bool literal_primal) {
  require(problem.f.kind() == Regularizer::Kind::zero,
          "the relaxed primal-dual method requires f = 0");
  const Vec u = inertial_point(state.w, state.w_prev, alpha);
  const Vec draw = oracle.draw(*problem.smooth, u, state.n + 1);
  return pd2_apply(state, problem, metrics, alpha, lambda, draw, literal_primal);
}

std::string ValidatorReport::summary() const {
  std::ostringstream os;
  os << (ok ? "ok" : "FAIL");
  os << "; sum ||W^1/2 D V^1/2||^2 = " << terms_sum;
  os << "; gamma = " << gamma;
  os << "; beta = " << beta;
  os << "; ||V|| = " << v_norm;
  os << "; epsilon = " << epsilon;
  for (const auto& f : failures) os << "\n  condition violated: " << f;
  return os.str();
}

namespace {

ValidatorReport base_report(const PdMetrics& metrics, const BlockAnalysisOperator& op,
                            double beta, double epsilon) {
  ValidatorReport r;
  r.beta = beta;
  r.epsilon = epsilon;
  r.v_norm = metrics.v_metric.norm();
  r.terms = composite_norm_terms(metrics.v_metric, metrics.w_metrics, op);
  r.terms_sum = std::accumulate(r.terms.begin(), r.terms.end(), 0.0);
  return r;
}

}  // namespace

ValidatorReport validate_pd1(const PdMetrics& metrics, const BlockAnalysisOperator& op,
                             double beta, double epsilon) {
  ValidatorReport r = base_report(metrics, op, beta, epsilon);
  if (!(r.terms_sum < 1.0)) {
    std::ostringstream os;
    os << "sum of composite norm terms must be < 1, got " << r.terms_sum << " (terms:";
    for (double t : r.terms) os << " " << t;
    os << ")";
    r.failures.push_back(os.str());
    r.gamma = 0.0;
  } else {
    r.gamma = (1.0 - std::sqrt(r.terms_sum)) * beta / r.v_norm;
    if (!(r.gamma > 0.5)) {
      std::ostringstream os;
      os << "(1 - sqrt(sum)) * beta / ||V|| = " << r.gamma << " must exceed 1/2";
      r.failures.push_back(os.str());
    }
  }
  if (!(epsilon > 0.0 && epsilon < 1.0))
    r.failures.push_back("epsilon must lie in (0, 1)");
  else if (r.failures.empty() && !(epsilon < std::min(1.0, r.gamma)))
    r.failures.push_back("epsilon must be below min{1, gamma}");
  r.ok = r.failures.empty();
  return r;
}

ValidatorReport validate_pd2(const PdMetrics& metrics, const BlockAnalysisOperator& op,
                             double beta, double epsilon) {
  ValidatorReport r = base_report(metrics, op, beta, epsilon);
  if (!(r.terms_sum < 1.0)) {
    std::ostringstream os;
    os << "sum of composite norm terms must be < 1, got " << r.terms_sum << " (terms:";
    for (double t : r.terms) os << " " << t;
    os << ")";
    r.failures.push_back(os.str());
  }
  r.gamma = beta / r.v_norm;
  if (!(r.gamma > 0.5)) {
    std::ostringstream os;
    os << "beta / ||V|| = " << r.gamma << " must exceed 1/2";
    r.failures.push_back(os.str());
  }
  if (!(epsilon > 0.0 && epsilon < std::min(1.0, beta)))
    r.failures.push_back("epsilon must lie in (0, min{1, beta})");
  r.ok = r.failures.empty();
  return r;
}

ValidatorReport validate_sifb(const Metric& u_metric, double beta,
                              const Schedules& schedules, int horizon) {
  ValidatorReport r;
  r.beta = beta;
  r.epsilon = schedules.epsilon;
  r.v_norm = u_metric.norm();
  const double eps = schedules.epsilon;
  if (!(eps > 0.0 && eps < 1.0)) r.failures.push_back("epsilon must lie in (0, 1)");
  const double cap = (2.0 - eps) * beta / r.v_norm;
  r.gamma = cap;
  for (int n = 0; n < horizon; ++n) {
    const double g = schedules.gamma(n);
    if (!(g >= eps && g <= cap)) {
      std::ostringstream os;
      os << "gamma(" << n << ") = " << g << " outside [epsilon, (2 - epsilon) beta / ||U||] = ["
         << eps << ", " << cap << "]";
      r.failures.push_back(os.str());
      break;
    }
  }
  for (int n = 0; n < horizon; ++n) {
    const double a = schedules.alpha(n);
    if (!(a >= 0.0 && a <= 1.0 - eps)) {
      std::ostringstream os;
      os << "alpha(" << n << ") = " << a << " outside [0, 1 - epsilon]";
      r.failures.push_back(os.str());
      break;
    }
  }
  r.ok = r.failures.empty();
  return r;
}

double fixed_point_residual(const CompositeProblem& problem, const PdMetrics& metrics,
                            const Vec& w, const DualBlocks& v) {
  SolverState state{w, w, v, v, 0};
  const Vec draw = problem.smooth->gradient(w);
  const SolverState next =
      pd1_apply(state, problem, metrics, 0.0, draw, /*extrapolated_dual=*/true);
  double d2 = (next.w - w).squaredNorm();
  for (std::size_t k = 0; k < v.size(); ++k) d2 += (next.v[k] - v[k]).squaredNorm();
  return std::sqrt(d2);
}

double SolutionCertificate::max_residual() const {
  double m = primal_residual;
  for (double d : dual_residuals) m = std::max(m, d);
  return m;
}

SolutionCertificate certify_solution(const CompositeProblem& problem,
                                     const PdMetrics& metrics, const Vec& w,
                                     const DualBlocks& v) {
  require(v.size() == problem.terms.size(), "certificate: dual block count mismatch");
  SolutionCertificate cert;
  cert.w = w;
  cert.v = v;
  const Vec grad = problem.smooth->gradient(w);
  Vec target = -grad;
  for (std::size_t k = 0; k < problem.terms.size(); ++k)
    target -= problem.terms[k].op.apply_adjoint(v[k]);
  cert.primal_residual = problem.f.subgradient_distance(w, target);
  cert.dual_residuals.reserve(problem.terms.size());
  for (std::size_t k = 0; k < problem.terms.size(); ++k) {
    const auto& term = problem.terms[k];
    const Vec arg = v[k] + term.op.apply(w);
    cert.dual_residuals.push_back((v[k] - term.g.prox_conjugate(arg, 1.0)).norm());
  }
  cert.fp_residual = fixed_point_residual(problem, metrics, w, v);
  cert.objective = problem.objective(w);
  return cert;
}

namespace {

/// Closed-form resolvent of the composite nonsmooth part for the
/// one-operator method: available for no terms at all, or for disjoint
/// coordinate groups combined with a separable f (prox of the l1 part
/// followed by blockwise shrinkage).
ScaledResolvent build_sifb_resolvent(const CompositeProblem& problem,
                                     const Metric& u_metric) {
  if (problem.terms.empty()) {
    const Regularizer f = problem.f;
    const Metric u = u_metric;
    return [f, u](const Vec& x, double gamma) {
      if (u.is_uniform()) return f.prox(x, gamma * u.uniform_scale());
      return f.prox_in_metric(x, Metric::diagonal(gamma * u.diagonal_entries()));
    };
  }
  require(!problem.coordinate_groups.empty(),
          "one-operator method: the composite nonsmooth part has no closed-form "
          "resolvent for general operators; use pd1 or pd2");
  require(groups_disjoint(problem.coordinate_groups),
          "one-operator method: coordinate groups overlap, the joint prox is not "
          "separable; use pd1 or pd2");
  require(problem.f.kind() == Regularizer::Kind::zero,
          "one-operator method: grouped shrinkage requires f = 0; use pd1 or pd2");
  require(u_metric.is_uniform(),
          "one-operator method: grouped shrinkage requires a uniform preconditioner");
  const CompositeProblem* prob = &problem;
  const double scale = u_metric.uniform_scale();
  return [prob, scale](const Vec& x, double gamma) {
    const double step = gamma * scale;
    Vec y = x;
    for (std::size_t l = 0; l < prob->coordinate_groups.size(); ++l) {
      const auto& g = prob->coordinate_groups[l];
      Vec block(static_cast<int>(g.size()));
      for (std::size_t i = 0; i < g.size(); ++i) block[static_cast<int>(i)] = y[g[i]];
      block = prox_group_l2(block, step * prob->terms[l].g.weight());
      for (std::size_t i = 0; i < g.size(); ++i) y[g[i]] = block[static_cast<int>(i)];
    }
    return y;
  };
}

double sifb_map_residual(const CompositeProblem& problem, const ScaledResolvent& resolvent,
                         const Metric& u_metric, const Vec& w, double gamma) {
  const Vec grad = problem.smooth->gradient(w);
  const Vec next = resolvent(w - gamma * u_metric.apply(grad), gamma);
  return (next - w).norm();
}

}  // namespace

RunResult run_solver(const CompositeProblem& problem, Method method,
                     const Schedules& schedules, const PdMetrics& metrics,
                     GradientOracle& oracle, const StoppingRule& stopping,
                     const RunOptions& options, const ReferencePoint* reference) {
  require(stopping.max_iterations >= 0, "solver: negative iteration budget");
  require(options.log_every >= 1, "solver: log_every must be at least 1");
  const int horizon = stopping.max_iterations;
  const double beta = problem.smooth->beta();

  ScaledResolvent resolvent;
  if (method == Method::sifb) {
    resolvent = build_sifb_resolvent(problem, metrics.v_metric);
  } else {
    require(metrics.w_metrics.size() == problem.terms.size(),
            "solver: one dual preconditioner per term required");
  }
  if (method == Method::pd2)
    require(problem.f.kind() == Regularizer::Kind::zero,
            "the relaxed primal-dual method requires f = 0");

  RunResult result;
  const BlockAnalysisOperator op = problem.analysis_operator();
  switch (method) {
    case Method::sifb:
      result.validator = validate_sifb(metrics.v_metric, beta, schedules, horizon);
      break;
    case Method::pd1:
      result.validator = validate_pd1(metrics, op, beta, schedules.epsilon);
      break;
    case Method::pd2:
      result.validator = validate_pd2(metrics, op, beta, schedules.epsilon);
      break;
  }
  if (method != Method::sifb) {
    // Schedule range checks for the inertial/relaxation sequences.
    for (int n = 0; n < horizon; ++n) {
      const double a = schedules.alpha(n);
      if (!(a >= 0.0 && a <= 1.0 - schedules.epsilon)) {
        result.validator.failures.push_back(
            "alpha(" + std::to_string(n) + ") outside [0, 1 - epsilon]");
        result.validator.ok = false;
        break;
      }
    }
    const double lam = schedules.lambda_relax;
    if (method == Method::pd2 && !(lam >= schedules.epsilon && lam <= 1.0)) {
      result.validator.failures.push_back("relaxation outside [epsilon, 1]");
      result.validator.ok = false;
    }
  }
  if (!result.validator.ok) {
    if (!options.override_validators)
      throw ValidationError("step-size validation failed (" + method_name(method) +
                            "): " + result.validator.summary());
    result.validator_overridden = true;
  }

  // Distances to the reference are reported in the metric the iteration
  // contracts: U^-1 for the one-operator method, the coupled or relaxed
  // product form for the primal-dual methods.
  std::optional<SaddleMetric> saddle;
  if (reference && method != Method::sifb && result.validator.terms_sum < 1.0 &&
      !problem.terms.empty()) {
    if (method == Method::pd1)
      saddle.emplace(SaddleMetric::coupled(metrics.v_metric, metrics.w_metrics, op));
    else
      saddle.emplace(SaddleMetric::relaxed(metrics.v_metric, metrics.w_metrics, op));
  }

  SolverState state;
  state.w = options.start ? *options.start : Vec::Zero(problem.dim());
  state.w_prev = state.w;
  state.v = DualBlocks::zeros(problem.dual_dims());
  state.v_prev = state.v;
  state.n = 0;

  result.min_gamma = horizon > 0 ? schedules.min_gamma(horizon) : 0.0;
  if (options.store_trajectory) result.trajectory.push_back(state);

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&t0]() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  auto make_record = [&](int n_done, double gamma, double alpha) {
    IterateRecord rec;
    rec.n = n_done;
    rec.objective = problem.objective(state.w);
    rec.gamma = gamma;
    rec.alpha = alpha;
    if (method == Method::sifb)
      rec.fp_residual = sifb_map_residual(problem, resolvent, metrics.v_metric, state.w, gamma);
    else
      rec.fp_residual = fixed_point_residual(problem, metrics, state.w, state.v);
    if (reference) {
      double d2 = (state.w - reference->w).squaredNorm();
      for (std::size_t k = 0; k < state.v.size(); ++k)
        d2 += (state.v[k] - reference->v[k]).squaredNorm();
      rec.dist_ref_euclid = std::sqrt(d2);
      if (method == Method::sifb) {
        rec.dist_ref_metric =
            std::sqrt(metrics.v_metric.inverse_quadratic_form(state.w - reference->w));
      } else if (saddle) {
        DualBlocks dv = state.v - reference->v;
        rec.dist_ref_metric = saddle->norm(state.w - reference->w, dv);
      } else {
        rec.dist_ref_metric = std::numeric_limits<double>::quiet_NaN();
      }
    }
    rec.wall_ms = elapsed_ms();
    return rec;
  };

  bool stopped = false;
  for (int n = 0; n < horizon && !stopped; ++n) {
    const double gamma = schedules.gamma(n);
    const double alpha = schedules.alpha(n);
    const double lambda = schedules.lambda(n);

    const Vec query = inertial_point(state.w, state.w_prev, alpha);
    const Vec draw = oracle.draw(*problem.smooth, query, n + 1);
    if (options.track_oracle_errors)
      result.oracle_errors.push_back((draw - problem.smooth->gradient(query)).norm());

    switch (method) {
      case Method::sifb:
        state = sifb_step(state, resolvent, metrics.v_metric, draw, gamma, alpha);
        break;
      case Method::pd1:
        state = pd1_apply(state, problem, metrics, alpha, draw, options.extrapolated_dual);
        break;
      case Method::pd2:
        state = pd2_apply(state, problem, metrics, alpha, lambda, draw,
                          options.literal_primal);
        break;
    }
    result.alphas.push_back(alpha);
    result.alpha_sum += alpha;
    result.max_step_norm = std::max(result.max_step_norm, (state.w - state.w_prev).norm());
    result.iterations = n + 1;
    if (options.store_trajectory) result.trajectory.push_back(state);

    if (state.w.norm() > stopping.divergence_threshold) {
      result.diverged = true;
      result.stop_reason = "diverged: iterate norm exceeded " +
                           std::to_string(stopping.divergence_threshold) +
                           " at iteration " + std::to_string(n + 1);
      stopped = true;
    }

    if (!stopped && ((n + 1) % options.log_every == 0 || n + 1 == horizon)) {
      const IterateRecord rec = make_record(n + 1, gamma, alpha);
      result.records.push_back(rec);
      if (rec.objective > stopping.divergence_threshold || !std::isfinite(rec.objective)) {
        result.diverged = true;
        result.stop_reason = "diverged: objective " + format_double(rec.objective) +
                             " exceeded " + format_double(stopping.divergence_threshold) +
                             " at iteration " + std::to_string(n + 1);
        stopped = true;
      } else if (stopping.fp_tolerance > 0.0 && rec.fp_residual <= stopping.fp_tolerance) {
        result.stop_reason = "fixed-point residual below tolerance at iteration " +
                             std::to_string(n + 1);
        stopped = true;
      }
    }
  }
  if (result.stop_reason.empty())
    result.stop_reason = horizon == 0 ? "no iterations requested" : "iteration budget reached";

  result.state = state;
  if (method == Method::sifb) {
    // Dual candidates are pinned by stationarity when the groups partition
    // the support: the certificate evaluates them explicitly.
    const Vec grad = problem.smooth->gradient(state.w);
    SolutionCertificate cert;
    cert.w = state.w;
    cert.v.blocks.reserve(problem.terms.size());
    for (const auto& term : problem.terms)
      cert.v.blocks.push_back(-term.op.apply(grad));
    double d2 = 0.0;
    Vec covered = Vec::Zero(problem.dim());
    for (std::size_t k = 0; k < problem.terms.size(); ++k) {
      const auto& term = problem.terms[k];
      const double dk =
          term.g.subgradient_distance(term.op.apply(state.w), -term.op.apply(grad));
      d2 += dk * dk;
      covered += term.op.apply_adjoint(Vec::Ones(term.op.out_dim()));
      cert.dual_residuals.push_back(
          (cert.v[k] - term.g.prox_conjugate(cert.v[k] + term.op.apply(state.w), 1.0)).norm());
    }
    if (problem.terms.empty()) {
      cert.primal_residual = problem.f.subgradient_distance(state.w, -grad);
    } else {
      for (int j = 0; j < problem.dim(); ++j)
        if (covered[j] == 0.0) d2 += grad[j] * grad[j];
      cert.primal_residual = std::sqrt(d2);
    }
    cert.fp_residual = sifb_map_residual(problem, resolvent, metrics.v_metric, state.w,
                                         horizon > 0 ? schedules.gamma(result.iterations - 1)
                                                     : schedules.gamma(0));
    cert.objective = problem.objective(state.w);
    result.certificate = cert;
  } else {
    result.certificate = certify_solution(problem, metrics, state.w, state.v);
  }
  return result;
}

std::vector<double> trajectory_distances(const std::vector<SolverState>& trajectory,
                                         const ReferencePoint& reference,
                                         const SaddleMetric& metric) {
  std::vector<double> out;
  out.reserve(trajectory.size());
  for (const auto& s : trajectory) {
    DualBlocks dv = s.v - reference.v;
    out.push_back(metric.norm(s.w - reference.w, dv));
  }
  return out;
}

double fejer_violation(const std::vector<SolverState>& trajectory,
                       const std::vector<double>& alphas,
                       const std::vector<double>& oracle_errors,
                       const ReferencePoint& reference, const SaddleMetric& metric) {
  require(trajectory.size() == alphas.size() + 1,
          "quasi-monotonicity audit: trajectory must hold the initial state plus one "
          "entry per iteration");
  const double lam_min = metric.min_eigenvalue_estimate();
  require(lam_min > 0.0, "quasi-monotonicity audit: metric is not positive definite");
  const std::vector<double> dist = trajectory_distances(trajectory, reference, metric);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t + 1 < trajectory.size(); ++t) {
    const double alpha = alphas[t];
    const SolverState& s = trajectory[t];
    DualBlocks dvp = s.v - s.v_prev;
    const double step_norm = metric.norm(s.w - s.w_prev, dvp);
    const double err = oracle_errors.empty() ? 0.0 : oracle_errors[t];
    const double bound = (1.0 + alpha) * dist[t] + alpha * step_norm +
                         err / std::sqrt(lam_min);
    worst = std::max(worst, dist[t + 1] - bound);
  }
  return worst;
}

}  // namespace pdsplit
