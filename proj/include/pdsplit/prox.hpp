#pragma once

#include "pdsplit/metric.hpp"
#include "pdsplit/types.hpp"

#include <string>

namespace pdsplit {

/// Soft threshold: componentwise sign(v) * max(|v| - tau, 0).
Vec prox_l1(const Vec& v, double tau);

/// Block soft threshold: v * max(1 - tau/||v||, 0), zero when ||v|| <= tau.
Vec prox_group_l2(const Vec& v, double tau);

/// Euclidean projection onto the simplex {x >= 0, sum x = radius}.
Vec project_simplex(const Vec& v, double radius);

/// Euclidean projection onto the l1 ball of the given radius
/// (sort-and-threshold through project_simplex).
Vec project_l1_ball(const Vec& v, double radius);

/// A weighted norm-type penalty with closed-form proximal operator.
///
/// Kinds:
///   zero      0                        (prox = identity)
///   abs       weight * |x|     on R
///   l1        weight * ||x||_1
///   group_l2  weight * ||x||_2
///   linf      weight * ||x||_inf
class Regularizer {
 public:
  enum class Kind { zero, abs, l1, group_l2, linf };

  static Regularizer zero(int dim);
  static Regularizer abs(double weight);
  static Regularizer l1(int dim, double weight);
  static Regularizer group_l2(int dim, double weight);
  static Regularizer linf(int dim, double weight);

  double evaluate(const Vec& x) const;

  /// prox_{step * g}(v), step > 0.
  Vec prox(const Vec& v, double step) const;

  /// prox_{step * g*}(v) through the Moreau decomposition
  /// prox_{t g*}(v) = v - t * prox_{g/t}(v/t); a single code path serves
  /// every kind. For norm penalties this is the projection onto the dual
  /// ball of radius `weight` (independent of step).
  Vec prox_conjugate(const Vec& v, double step) const;

  /// prox of g in the metric <., M .> for diagonal M. A uniform M reduces to
  /// the scalar path; a genuinely non-uniform diagonal is only admissible
  /// for separable kinds (zero, abs, l1) and rejected otherwise.
  Vec prox_in_metric(const Vec& v, const Metric& m) const;
  Vec prox_conjugate_in_metric(const Vec& v, const Metric& m) const;

  /// Euclidean distance from u to the subdifferential of g at x
  /// (closed form per kind).
  double subgradient_distance(const Vec& x, const Vec& u) const;
  bool subgradient_membership(const Vec& x, const Vec& u, double tol) const {
    return subgradient_distance(x, u) <= tol;
  }

  Kind kind() const { return kind_; }
  double weight() const { return weight_; }
  int dim() const { return dim_; }
  bool separable() const {
    return kind_ == Kind::zero || kind_ == Kind::abs || kind_ == Kind::l1;
  }
  std::string kind_name() const;

 private:
  Regularizer(Kind kind, int dim, double weight);

  Kind kind_;
  int dim_;
  double weight_;
};

}  // namespace pdsplit
