#pragma once

#include "pdsplit/types.hpp"

namespace pdsplit {

/// Positive definite diagonal metric on a Euclidean space, either a uniform
/// scaling tau*Id or a general positive diagonal. Induces the inner product
/// <x, M y> and the proximal metric used by the preconditioned solvers.
class Metric {
 public:
  static Metric scaled_identity(int dim, double scale);
  static Metric diagonal(Vec diag);

  Vec apply(const Vec& x) const;
  Vec apply_inverse(const Vec& x) const;
  Vec apply_sqrt(const Vec& x) const;

  double quadratic_form(const Vec& x) const { return x.dot(apply(x)); }
  double inverse_quadratic_form(const Vec& x) const { return x.dot(apply_inverse(x)); }

  int dim() const { return dim_; }
  bool is_uniform() const { return uniform_; }
  /// Only meaningful when is_uniform().
  double uniform_scale() const { return scale_; }
  const Vec& diagonal_entries() const { return diag_; }

  double min_eigenvalue() const;
  double max_eigenvalue() const;
  /// Operator norm; equals max_eigenvalue for a positive diagonal.
  double norm() const { return max_eigenvalue(); }

 private:
  Metric(int dim, bool uniform, double scale, Vec diag);

  int dim_;
  bool uniform_;
  double scale_;
  Vec diag_;
};

}  // namespace pdsplit
