#include "pdsplit/saddle_metric.hpp"

#include "pdsplit/rng.hpp"

#include <cmath>
#include <numeric>

namespace pdsplit {

std::vector<double> composite_norm_terms(const Metric& v_metric,
                                         const std::vector<Metric>& w_metrics,
                                         const BlockAnalysisOperator& op, double tol) {
  require(w_metrics.size() == op.block_count(),
          "composite norms: one dual metric per block required");
  require(v_metric.dim() == op.in_dim(), "composite norms: primal dimension mismatch");
  std::vector<double> terms;
  terms.reserve(op.block_count());
  for (std::size_t k = 0; k < op.block_count(); ++k) {
    require(w_metrics[k].dim() == op.map(k).out_dim(),
            "composite norms: dual metric dimension mismatch at block " + std::to_string(k));
    const Metric& wk = w_metrics[k];
    const LinearMap& dk = op.map(k);
    const Metric& vm = v_metric;
    LinearMap composed(
        dk.in_dim(), dk.out_dim(),
        [&](const Vec& x) { return wk.apply_sqrt(dk.apply(vm.apply_sqrt(x))); },
        [&](const Vec& y) { return vm.apply_sqrt(dk.apply_adjoint(wk.apply_sqrt(y))); },
        "composite");
    const auto est = power_iteration_norm(composed, tol, 20000, 13 + k);
    terms.push_back(est.value * est.value);
  }
  return terms;
}

SaddleMetric::SaddleMetric(Variant variant, Metric v_metric, std::vector<Metric> w_metrics,
                           BlockAnalysisOperator op)
    : variant_(variant),
      v_metric_(std::move(v_metric)),
      w_metrics_(std::move(w_metrics)),
      op_(std::move(op)) {
  terms_ = composite_norm_terms(v_metric_, w_metrics_, op_);
  terms_sum_ = std::accumulate(terms_.begin(), terms_.end(), 0.0);
  require(terms_sum_ < 1.0,
          "saddle metric: composite norm terms sum to " + std::to_string(terms_sum_) +
              " >= 1, the form is not positive definite");
  total_dim_ = v_metric_.dim();
  for (const auto& m : w_metrics_) total_dim_ += m.dim();

  // lambda_min(M) = s - lambda_max(s*Id - M) with s an upper bound for
  // lambda_max(M), both by power iteration on the flattened space.
  auto mat_vec = [this](const Vec& x) { return apply_flat(x); };
  LinearMap flat(total_dim_, total_dim_, mat_vec, mat_vec, "saddle metric");
  const double lam_max = power_iteration_norm(flat, 1e-12, 50000, 17).value;
  const double shift = lam_max * 1.25 + 1e-12;
  LinearMap shifted(
      total_dim_, total_dim_,
      [this, shift](const Vec& x) { return Vec(shift * x - apply_flat(x)); },
      [this, shift](const Vec& x) { return Vec(shift * x - apply_flat(x)); },
      "shifted saddle metric");
  min_eig_ = shift - power_iteration_norm(shifted, 1e-12, 50000, 19).value;
}

SaddleMetric SaddleMetric::coupled(Metric v_metric, std::vector<Metric> w_metrics,
                                   BlockAnalysisOperator op) {
  return SaddleMetric(Variant::coupled, std::move(v_metric), std::move(w_metrics),
                      std::move(op));
}

SaddleMetric SaddleMetric::relaxed(Metric v_metric, std::vector<Metric> w_metrics,
                                   BlockAnalysisOperator op) {
  return SaddleMetric(Variant::relaxed, std::move(v_metric), std::move(w_metrics),
                      std::move(op));
}

Vec SaddleMetric::flatten(const Vec& w, const DualBlocks& v) const {
  Vec x(total_dim_);
  x.head(v_metric_.dim()) = w;
  int off = v_metric_.dim();
  for (const auto& b : v.blocks) {
    x.segment(off, b.size()) = b;
    off += static_cast<int>(b.size());
  }
  return x;
}

void SaddleMetric::unflatten(const Vec& x, Vec& w, DualBlocks& v) const {
  w = x.head(v_metric_.dim());
  v.blocks.clear();
  int off = v_metric_.dim();
  for (const auto& m : w_metrics_) {
    v.blocks.push_back(x.segment(off, m.dim()));
    off += m.dim();
  }
}

Vec SaddleMetric::apply_flat(const Vec& x) const {
  Vec w;
  DualBlocks v;
  unflatten(x, w, v);
  Vec out_w = v_metric_.apply_inverse(w);
  DualBlocks out_v;
  out_v.blocks.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    out_v.blocks.push_back(w_metrics_[k].apply_inverse(v[k]));
  if (variant_ == Variant::coupled) {
    out_w -= op_.adjoint_sum(v);
    for (std::size_t k = 0; k < v.size(); ++k) out_v.blocks[k] -= op_.map(k).apply(w);
  } else {
    const Vec t = v_metric_.apply(op_.adjoint_sum(v));
    for (std::size_t k = 0; k < v.size(); ++k) out_v.blocks[k] -= op_.map(k).apply(t);
  }
  return flatten(out_w, out_v);
}

double SaddleMetric::quadratic_form(const Vec& w, const DualBlocks& v) const {
  require(w.size() == v_metric_.dim(), "saddle metric: primal dimension mismatch");
  require(v.size() == w_metrics_.size(), "saddle metric: dual block count mismatch");
  double q = v_metric_.inverse_quadratic_form(w);
  for (std::size_t k = 0; k < v.size(); ++k)
    q += w_metrics_[k].inverse_quadratic_form(v[k]);
  if (variant_ == Variant::coupled) {
    for (std::size_t k = 0; k < v.size(); ++k) q -= 2.0 * op_.map(k).apply(w).dot(v[k]);
  } else {
    const Vec t = op_.adjoint_sum(v);
    q -= t.dot(v_metric_.apply(t));
  }
  return q;
}

double SaddleMetric::norm(const Vec& w, const DualBlocks& v) const {
  const double q = quadratic_form(w, v);
  if (q < 0.0) {
    const double scale = w.squaredNorm() + v.squaredNorm();
    if (q < -1e-10 * std::max(scale, 1.0))
      throw NumericalError("saddle metric: negative quadratic form " + std::to_string(q));
    return 0.0;
  }
  return std::sqrt(q);
}

}  // namespace pdsplit
