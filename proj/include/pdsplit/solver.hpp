#pragma once

#include "pdsplit/metric.hpp"
#include "pdsplit/oracle.hpp"
#include "pdsplit/problem.hpp"
#include "pdsplit/saddle_metric.hpp"
#include "pdsplit/schedules.hpp"
#include "pdsplit/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pdsplit {

enum class Method { sifb, pd1, pd2 };
std::string method_name(Method m);

/// Current and previous primal/dual iterates. The previous pair feeds the
/// inertial extrapolation; dual blocks stay empty for the one-operator
/// method.
struct SolverState {
  Vec w;
  Vec w_prev;
  DualBlocks v;
  DualBlocks v_prev;
  int n = 0;
};

/// Primal and dual inertial extrapolations at inertia alpha.
Vec inertial_point(const Vec& w, const Vec& w_prev, double alpha);
DualBlocks inertial_blocks(const DualBlocks& v, const DualBlocks& v_prev, double alpha);

/// Preconditioners for the primal block and one per dual block.
struct PdMetrics {
  Metric v_metric;
  std::vector<Metric> w_metrics;
};

/// One step of inertial forward-backward splitting for a monotone inclusion
/// 0 in A(w) + B(w): resolvent of gamma U A applied to z - gamma U r, where
/// z is the inertial point and r the oracle draw at z. The resolvent
/// callable receives (point, gamma) and must evaluate J_{gamma U A}.
using ScaledResolvent = std::function<Vec(const Vec&, double)>;
SolverState sifb_step(const SolverState& state, const ScaledResolvent& resolvent,
                      const Metric& u_metric, const Vec& oracle_draw, double gamma,
                      double alpha);

/// One step of the inertial primal-dual method. The oracle is queried at the
/// primal inertial point. With `extrapolated_dual` the dual proxes see
/// 2 w_next - u instead of u - 2h; the two coincide exactly when f = 0.
SolverState pd1_step(const SolverState& state, const CompositeProblem& problem,
                     const PdMetrics& metrics, double alpha, GradientOracle& oracle,
                     bool extrapolated_dual = false);

/// One step of the relaxed variant (requires f = 0). `literal_primal` drops
/// the leading V on the final primal update; kept only for comparison, its
/// fixed points solve a rescaled inclusion unless V is the identity.
SolverState pd2_step(const SolverState& state, const CompositeProblem& problem,
                     const PdMetrics& metrics, double alpha, double lambda,
                     GradientOracle& oracle, bool literal_primal = false);

/// Step-size/metric certificate for the primal-dual methods.
struct ValidatorReport {
  bool ok = false;
  std::vector<double> terms;      ///< ||W_k^(1/2) D_k V^(1/2)||^2
  double terms_sum = 0.0;
  double gamma = 0.0;             ///< implied cocoercivity margin
  double beta = 0.0;
  double v_norm = 0.0;
  double epsilon = 0.0;
  std::vector<std::string> failures;
  std::string summary() const;
};

/// Conditions for the inertial primal-dual method: sum_k terms < 1,
/// gamma = (1 - sqrt(sum)) beta / ||V|| > 1/2 and epsilon < min{1, gamma}.
ValidatorReport validate_pd1(const PdMetrics& metrics, const BlockAnalysisOperator& op,
                             double beta, double epsilon);

/// Conditions for the relaxed variant: sum_k terms < 1,
/// beta / ||V|| > 1/2 and epsilon < min{1, beta}.
ValidatorReport validate_pd2(const PdMetrics& metrics, const BlockAnalysisOperator& op,
                             double beta, double epsilon);

/// Conditions for the one-operator method on 0 in A + B with B
/// beta-cocoercive: gamma(n) in [epsilon, (2 - epsilon) beta / ||U||] and
/// alpha(n) in [0, 1 - epsilon] over the horizon.
ValidatorReport validate_sifb(const Metric& u_metric, double beta,
                              const Schedules& schedules, int horizon);

/// Deterministic fixed-point displacement of (w, v): one exact step with
/// alpha = 0 of the primal-dual map in its dual-extrapolated form, whose
/// fixed points are exactly the solutions of the optimality inclusion for
/// every f. Returns the Euclidean displacement on the product space.
double fixed_point_residual(const CompositeProblem& problem, const PdMetrics& metrics,
                            const Vec& w, const DualBlocks& v);

/// First-order optimality certificate at (w, v):
///   primal: distance of -grad F(w) - sum_k D_k^* v_k to the subdifferential
///           of f at w (closed form),
///   dual:   per-block displacement ||v_k - prox_{g_k*}(v_k + D_k w)||,
///           zero exactly when D_k w lies in the conjugate subdifferential,
/// plus the deterministic fixed-point displacement.
struct SolutionCertificate {
  Vec w;
  DualBlocks v;
  double primal_residual = 0.0;
  std::vector<double> dual_residuals;
  double fp_residual = 0.0;
  double objective = 0.0;
  double max_residual() const;
};

SolutionCertificate certify_solution(const CompositeProblem& problem,
                                     const PdMetrics& metrics, const Vec& w,
                                     const DualBlocks& v);

/// One logged row of a run.
struct IterateRecord {
  int n = 0;
  double objective = 0.0;
  double fp_residual = 0.0;
  double dist_ref_euclid = 0.0;
  double dist_ref_metric = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double wall_ms = 0.0;
};

struct StoppingRule {
  int max_iterations = 5000;
  double fp_tolerance = 1e-8;       ///< 0 disables the residual stop
  double divergence_threshold = 1e12;
};

struct RunOptions {
  int log_every = 10;
  bool store_trajectory = false;    ///< keep every iterate pair
  bool track_oracle_errors = false; ///< record ||draw - gradient|| per step
  bool extrapolated_dual = false;   ///< pd1 dual-argument variant
  bool literal_primal = false;      ///< pd2 final-line variant
  bool override_validators = false;
  std::optional<Vec> start;
};

struct RunResult {
  SolverState state;
  std::vector<IterateRecord> records;
  std::vector<SolverState> trajectory;   ///< filled when store_trajectory
  std::vector<double> oracle_errors;     ///< filled when track_oracle_errors
  std::vector<double> alphas;            ///< alpha(n) per executed iteration
  ValidatorReport validator;
  bool validator_overridden = false;
  SolutionCertificate certificate;
  bool diverged = false;
  std::string stop_reason;
  int iterations = 0;
  double alpha_sum = 0.0;
  double max_step_norm = 0.0;            ///< sup ||w_n - w_{n-1}||
  double min_gamma = 0.0;
};

/// Reference point against which per-iterate distances are logged.
struct ReferencePoint {
  Vec w;
  DualBlocks v;
};

/// Runs one of the three methods from w = 0 (or options.start), logging
/// every `log_every` iterations. Step-size validation failures throw
/// ValidationError unless overridden; non-finite iterates throw
/// NumericalError naming the producing update. For sifb the composite
/// nonsmooth part must admit a closed-form resolvent (no terms, or disjoint
/// coordinate groups with f = 0); other shapes are configuration errors and
/// belong to the primal-dual methods.
RunResult run_solver(const CompositeProblem& problem, Method method,
                     const Schedules& schedules, const PdMetrics& metrics,
                     GradientOracle& oracle, const StoppingRule& stopping,
                     const RunOptions& options,
                     const ReferencePoint* reference = nullptr);

/// Distances ||iterate - reference|| in the solver metric, one per stored
/// trajectory entry.
std::vector<double> trajectory_distances(const std::vector<SolverState>& trajectory,
                                         const ReferencePoint& reference,
                                         const SaddleMetric& metric);

/// Pathwise quasi-monotonicity audit along a stored trajectory: verifies
///   d_{n+1} <= (1 + alpha_n) d_n + zeta_n + slack
/// with zeta_n = alpha_n ||z_n - z_{n-1}||_M + ||e_n|| / sqrt(lambda_min(M)),
/// e_n the oracle error. Returns the worst signed violation (<= 0 means the
/// inequality held everywhere).
double fejer_violation(const std::vector<SolverState>& trajectory,
                       const std::vector<double>& alphas,
                       const std::vector<double>& oracle_errors,
                       const ReferencePoint& reference, const SaddleMetric& metric);

}  // namespace pdsplit
