#include "pdsplit/metric.hpp"

#include <cmath>

namespace pdsplit {

Metric::Metric(int dim, bool uniform, double scale, Vec diag)
    : dim_(dim), uniform_(uniform), scale_(scale), diag_(std::move(diag)) {}

Metric Metric::scaled_identity(int dim, double scale) {
  require(dim >= 0, "metric: negative dimension");
  require(scale > 0.0 && std::isfinite(scale), "metric: scale must be positive finite");
  return Metric(dim, true, scale, Vec());
}

Metric Metric::diagonal(Vec diag) {
  const int n = static_cast<int>(diag.size());
  for (int i = 0; i < n; ++i)
    require(diag[i] > 0.0 && std::isfinite(diag[i]),
            "metric: diagonal entry " + std::to_string(i) + " must be positive finite");
  return Metric(n, false, 0.0, std::move(diag));
}

Vec Metric::apply(const Vec& x) const {
  require(x.size() == dim_, "metric: dimension mismatch");
  if (uniform_) return scale_ * x;
  return diag_.cwiseProduct(x);
}

Vec Metric::apply_inverse(const Vec& x) const {
  require(x.size() == dim_, "metric: dimension mismatch");
  if (uniform_) return x / scale_;
  return x.cwiseQuotient(diag_);
}

Vec Metric::apply_sqrt(const Vec& x) const {
  require(x.size() == dim_, "metric: dimension mismatch");
  if (uniform_) return std::sqrt(scale_) * x;
  return diag_.cwiseSqrt().cwiseProduct(x);
}

double Metric::min_eigenvalue() const {
  if (uniform_) return scale_;
  return dim_ == 0 ? 0.0 : diag_.minCoeff();
}

double Metric::max_eigenvalue() const {
  if (uniform_) return scale_;
  return dim_ == 0 ? 0.0 : diag_.maxCoeff();
}

}  // namespace pdsplit
