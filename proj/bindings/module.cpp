#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdsplit/config.hpp"
#include "pdsplit/dataset.hpp"
#include "pdsplit/linear_map.hpp"
#include "pdsplit/oracle.hpp"
#include "pdsplit/problem.hpp"
#include "pdsplit/prox.hpp"
#include "pdsplit/solver.hpp"
#include "pdsplit/types.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace pdsplit;

namespace {

Dataset dataset_from_arrays(Mat features, Vec labels) {
  require(features.rows() == labels.size(),
          "features and labels disagree on the sample count");
  Dataset d;
  d.meta.n = static_cast<int>(features.rows());
  d.meta.p = static_cast<int>(features.cols());
  d.inputs = Vec::Zero(features.rows());
  d.features = std::move(features);
  d.labels = std::move(labels);
  return d;
}

/// Python-facing handle for the grouped sparse regression problem:
/// min_w (1/n)||Phi w - y||^2 + weight * sum_k ||w_{G_k}||_2.
struct GroupLasso {
  CompositeProblem problem;

  static GroupLasso from_arrays(Mat features, Vec labels, double weight,
                                std::vector<std::vector<int>> groups) {
    return {assemble_group_lasso_indices(
        dataset_from_arrays(std::move(features), std::move(labels)), weight,
        std::move(groups))};
  }

  int dim() const { return problem.dim(); }
  double beta() const { return problem.smooth->beta(); }
  double objective(const Vec& w) const { return problem.objective(w); }
  Vec gradient(const Vec& w) const { return problem.smooth_gradient(w); }

  PdMetrics metrics(double tau, double sigma) const {
    PdMetrics m{Metric::scaled_identity(problem.dim(), tau), {}};
    for (int d : problem.dual_dims())
      m.w_metrics.push_back(Metric::scaled_identity(d, sigma));
    return m;
  }

  std::pair<bool, std::string> check_step_sizes(const std::string& method, double tau,
                                                double sigma, double epsilon) const {
    const PdMetrics m = metrics(tau, sigma);
    const BlockAnalysisOperator op = problem.analysis_operator();
    ValidatorReport report;
    if (method == "pd1") {
      report = validate_pd1(m, op, problem.smooth->beta(), epsilon);
    } else if (method == "pd2") {
      report = validate_pd2(m, op, problem.smooth->beta(), epsilon);
    } else {
      throw ConfigError("check_step_sizes expects method 'pd1' or 'pd2', got '" +
                        method + "'");
    }
    return {report.ok, report.summary()};
  }

  py::dict solve(const std::string& method, double tau, double sigma, int iterations,
                 double fp_tolerance, const std::string& oracle, double sig,
                 std::uint64_t seed, double gamma, double alpha, double lambda_relax,
                 double epsilon, bool override_validators) const {
    Schedules sched;
    sched.gamma_rule = Schedules::GammaRule::constant;
    sched.gamma_const = gamma;
    sched.alpha_rule =
        alpha == 0.0 ? Schedules::AlphaRule::zero : Schedules::AlphaRule::constant;
    sched.alpha_const = alpha;
    sched.lambda_relax = lambda_relax;
    sched.epsilon = epsilon;

    GradientOracle draw = [&] {
      if (oracle == "exact") return GradientOracle::exact();
      if (oracle == "gaussian_decay") return GradientOracle::gaussian_decay(sig, seed);
      throw ConfigError("solve expects oracle 'exact' or 'gaussian_decay', got '" +
                        oracle + "'");
    }();

    StoppingRule stopping;
    stopping.max_iterations = iterations;
    stopping.fp_tolerance = fp_tolerance;
    RunOptions options;
    options.log_every = std::max(1, iterations);
    options.override_validators = override_validators;

    const RunResult result =
        run_solver(problem, parse_method_name(method), sched, metrics(tau, sigma), draw,
                   stopping, options);

    py::list duals;
    for (std::size_t k = 0; k < result.state.v.size(); ++k)
      duals.append(result.state.v[k]);
    return py::dict(
        "w"_a = result.state.w, "v"_a = duals,
        "objective"_a = result.certificate.objective,
        "fp_residual"_a = result.certificate.fp_residual,
        "primal_residual"_a = result.certificate.primal_residual,
        "iterations"_a = result.iterations, "diverged"_a = result.diverged,
        "stop_reason"_a = result.stop_reason);
  }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "stochastic inertial splitting solvers for composite regression";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<NumericalError>(m, "NumericalError");

  m.def("prox_l1", &prox_l1, "v"_a, "tau"_a,
        "Soft threshold: sign(v) * max(|v| - tau, 0), componentwise.");
  m.def("prox_group_l2", &prox_group_l2, "v"_a, "tau"_a,
        "Block soft threshold: v * max(1 - tau/||v||, 0).");
  m.def("project_simplex", &project_simplex, "v"_a, "radius"_a,
        "Euclidean projection onto {x >= 0, sum x = radius}.");
  m.def("project_l1_ball", &project_l1_ball, "v"_a, "radius"_a,
        "Euclidean projection onto the l1 ball of the given radius.");
  m.def(
      "spectral_norm",
      [](const Mat& a) {
        return power_iteration_norm(LinearMap::dense(a), 1e-12, 100000).value;
      },
      "a"_a, "Operator norm of a dense matrix via power iteration.");

  py::class_<Regularizer>(m, "Regularizer",
                          "Weighted norm penalty with a closed-form prox.")
      .def_static("zero", &Regularizer::zero, "dim"_a)
      .def_static("abs", &Regularizer::abs, "weight"_a)
      .def_static("l1", &Regularizer::l1, "dim"_a, "weight"_a)
      .def_static("group_l2", &Regularizer::group_l2, "dim"_a, "weight"_a)
      .def_static("linf", &Regularizer::linf, "dim"_a, "weight"_a)
      .def("evaluate", &Regularizer::evaluate, "x"_a)
      .def("prox", &Regularizer::prox, "v"_a, "step"_a)
      .def("prox_conjugate", &Regularizer::prox_conjugate, "v"_a, "step"_a)
      .def_property_readonly("dim", &Regularizer::dim)
      .def_property_readonly("weight", &Regularizer::weight)
      .def("__repr__", [](const Regularizer& g) {
        return "Regularizer(" + g.kind_name() + ", dim=" + std::to_string(g.dim()) +
               ", weight=" + format_double(g.weight()) + ")";
      });

  m.def(
      "make_dataset",
      [](int n, int p, const Vec& w_gen, double noise_scale, std::uint64_t seed,
         double a, double b) {
        DatasetMeta meta;
        meta.n = n;
        meta.p = p;
        meta.a = a;
        meta.b = b;
        meta.noise_scale = noise_scale;
        meta.seed = seed;
        meta.w_gen = w_gen;
        Dataset d = generate_polynomial_dataset(meta);
        return py::make_tuple(d.inputs, d.features, d.labels);
      },
      "n"_a, "p"_a, "w_gen"_a, "noise_scale"_a = 0.0, "seed"_a = 0, "a"_a = -1.0,
      "b"_a = 1.0,
      "Sampled polynomial regression data: returns (inputs, features, labels).");

  py::class_<GroupLasso>(m, "GroupLasso",
                         "min_w (1/n)||Phi w - y||^2 + weight * sum ||w_G||_2")
      .def_static("from_arrays", &GroupLasso::from_arrays, "features"_a, "labels"_a,
                  "weight"_a, "groups"_a,
                  "Builds the problem from a design matrix, labels and 0-based "
                  "coordinate groups.")
      .def_property_readonly("dim", &GroupLasso::dim)
      .def_property_readonly("beta", &GroupLasso::beta,
                             "Cocoercivity constant n / (2 ||Phi||^2).")
      .def("objective", &GroupLasso::objective, "w"_a)
      .def("gradient", &GroupLasso::gradient, "w"_a,
           "Gradient of the smooth part (2/n) Phi^T (Phi w - y).")
      .def("check_step_sizes", &GroupLasso::check_step_sizes, "method"_a, "tau"_a,
           "sigma"_a, "epsilon"_a = 1e-3,
           "Returns (ok, summary) for the method's step-size conditions.")
      .def("solve", &GroupLasso::solve, "method"_a = "pd1", "tau"_a = 0.15,
           "sigma"_a = 0.15, "iterations"_a = 5000, "fp_tolerance"_a = 1e-10,
           "oracle"_a = "exact", "sig"_a = 1.0, "seed"_a = 0, "gamma"_a = 1.0,
           "alpha"_a = 0.0, "lambda_relax"_a = 1.0, "epsilon"_a = 1e-3,
           "override_validators"_a = false,
           "Runs sifb, pd1 or pd2 from zero and returns the final state with "
           "its optimality certificate.");
}
