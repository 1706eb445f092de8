#pragma once

#include "pdsplit/linear_map.hpp"
#include "pdsplit/metric.hpp"
#include "pdsplit/types.hpp"

#include <vector>

namespace pdsplit {

/// ||W_k^(1/2) D_k V^(1/2)||^2 for every block, by power iteration.
std::vector<double> composite_norm_terms(const Metric& v_metric,
                                         const std::vector<Metric>& w_metrics,
                                         const BlockAnalysisOperator& op,
                                         double tol = 1e-10);

/// Quadratic form of the solver metric on the primal-dual product space.
///
/// Two variants are supported, both positive definite whenever the composite
/// norm terms sum below one:
///   coupled:  <w, V^-1 w> + sum_k <v_k, W_k^-1 v_k> - 2 sum_k <D_k w, v_k>
///   relaxed:  <w, V^-1 w> + sum_k <v_k, W_k^-1 v_k> - <D*v, V D*v>
/// The coupled form is the distance contracted by the inertial primal-dual
/// iteration; the relaxed form is the one contracted by the relaxed variant.
/// Only the quadratic form (not the inverse operator) is exposed.
class SaddleMetric {
 public:
  enum class Variant { coupled, relaxed };

  static SaddleMetric coupled(Metric v_metric, std::vector<Metric> w_metrics,
                              BlockAnalysisOperator op);
  static SaddleMetric relaxed(Metric v_metric, std::vector<Metric> w_metrics,
                              BlockAnalysisOperator op);

  double quadratic_form(const Vec& w, const DualBlocks& v) const;
  double norm(const Vec& w, const DualBlocks& v) const;

  /// Smallest eigenvalue of the form on the product space (shifted power
  /// iteration; an estimate, not a certified bound).
  double min_eigenvalue_estimate() const { return min_eig_; }
  /// Upper bound for the norm of the inverse metric, 1 / min eigenvalue.
  double inverse_norm_upper_bound() const { return 1.0 / min_eigenvalue_estimate(); }

  const std::vector<double>& terms() const { return terms_; }
  double terms_sum() const { return terms_sum_; }
  Variant variant() const { return variant_; }

 private:
  SaddleMetric(Variant variant, Metric v_metric, std::vector<Metric> w_metrics,
               BlockAnalysisOperator op);

  Vec flatten(const Vec& w, const DualBlocks& v) const;
  void unflatten(const Vec& x, Vec& w, DualBlocks& v) const;
  Vec apply_flat(const Vec& x) const;

  Variant variant_;
  Metric v_metric_;
  std::vector<Metric> w_metrics_;
  BlockAnalysisOperator op_;
  std::vector<double> terms_;
  double terms_sum_;
  int total_dim_;
  double min_eig_;
};

}  // namespace pdsplit
