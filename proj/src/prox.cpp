#include "pdsplit/prox.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pdsplit {

Vec prox_l1(const Vec& v, double tau) {
  require(tau >= 0.0, "prox_l1: threshold must be nonnegative");
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]) - tau;
    out[i] = m > 0.0 ? (v[i] > 0.0 ? m : -m) : 0.0;
  }
  return out;
}

Vec prox_group_l2(const Vec& v, double tau) {
  require(tau >= 0.0, "prox_group_l2: threshold must be nonnegative");
  const double n = v.norm();
  if (n <= tau) return Vec::Zero(v.size());
  return (1.0 - tau / n) * v;
}

Vec project_simplex(const Vec& v, double radius) {
  require(radius >= 0.0, "project_simplex: radius must be nonnegative");
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    css += u[k];
    const double t = (css - radius) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  Vec out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

Vec project_l1_ball(const Vec& v, double radius) {
  require(radius >= 0.0, "project_l1_ball: radius must be nonnegative");
  if (v.lpNorm<1>() <= radius) return v;
  const Vec av = v.cwiseAbs();
  const Vec s = project_simplex(av, radius);
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i] >= 0.0 ? s[i] : -s[i];
  return out;
}

Regularizer::Regularizer(Kind kind, int dim, double weight)
    : kind_(kind), dim_(dim), weight_(weight) {
  require(dim >= 1, "regularizer: dimension must be positive");
  require(weight >= 0.0 && std::isfinite(weight),
          "regularizer: weight must be nonnegative finite");
}

Regularizer Regularizer::zero(int dim) { return Regularizer(Kind::zero, dim, 0.0); }
Regularizer Regularizer::abs(double weight) { return Regularizer(Kind::abs, 1, weight); }
Regularizer Regularizer::l1(int dim, double weight) {
  return Regularizer(Kind::l1, dim, weight);
}
Regularizer Regularizer::group_l2(int dim, double weight) {
  return Regularizer(Kind::group_l2, dim, weight);
}
Regularizer Regularizer::linf(int dim, double weight) {
  return Regularizer(Kind::linf, dim, weight);
}

std::string Regularizer::kind_name() const {
  switch (kind_) {
    case Kind::zero: return "zero";
    case Kind::abs: return "abs";
    case Kind::l1: return "l1";
    case Kind::group_l2: return "group_l2";
    case Kind::linf: return "linf";
  }
  return "?";
}

double Regularizer::evaluate(const Vec& x) const {
  require(x.size() == dim_, "regularizer: dimension mismatch");
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::abs:
    case Kind::l1: return weight_ * x.lpNorm<1>();
    case Kind::group_l2: return weight_ * x.norm();
    case Kind::linf: return dim_ == 0 ? 0.0 : weight_ * x.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

Vec Regularizer::prox(const Vec& v, double step) const {
  require(v.size() == dim_, "regularizer: dimension mismatch");
  require(step > 0.0 && std::isfinite(step), "regularizer: prox step must be positive");
  switch (kind_) {
    case Kind::zero: return v;
    case Kind::abs:
    case Kind::l1: return prox_l1(v, step * weight_);
    case Kind::group_l2: return prox_group_l2(v, step * weight_);
    case Kind::linf: return v - project_l1_ball(v, step * weight_);
  }
  return v;
}

Vec Regularizer::prox_conjugate(const Vec& v, double step) const {
  require(v.size() == dim_, "regularizer: dimension mismatch");
  require(step > 0.0 && std::isfinite(step), "regularizer: prox step must be positive");
  if (kind_ == Kind::zero) return Vec::Zero(dim_);
  return v - step * prox(v / step, 1.0 / step);
}

Vec Regularizer::prox_in_metric(const Vec& v, const Metric& m) const {
  require(m.dim() == dim_, "regularizer: preconditioner dimension mismatch");
  if (m.is_uniform()) return prox(v, m.uniform_scale());
  require(separable(), "regularizer: non-uniform diagonal preconditioner requires a "
                       "separable kind, got " + kind_name());
  if (kind_ == Kind::zero) return v;
  // Per-coordinate soft threshold with step taken from the diagonal.
  require(v.size() == dim_, "regularizer: dimension mismatch");
  const Vec& d = m.diagonal_entries();
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) {
    const double t = std::abs(v[i]) - d[i] * weight_;
    out[i] = t > 0.0 ? (v[i] > 0.0 ? t : -t) : 0.0;
  }
  return out;
}

Vec Regularizer::prox_conjugate_in_metric(const Vec& v, const Metric& m) const {
  require(m.dim() == dim_, "regularizer: preconditioner dimension mismatch");
  if (m.is_uniform()) return prox_conjugate(v, m.uniform_scale());
  require(separable(), "regularizer: non-uniform diagonal preconditioner requires a "
                       "separable kind, got " + kind_name());
  require(v.size() == dim_, "regularizer: dimension mismatch");
  if (kind_ == Kind::zero) return Vec::Zero(dim_);
  // Conjugate of a separable l1 penalty is a box indicator; projection onto
  // a box is componentwise in any diagonal metric.
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = std::clamp(v[i], -weight_, weight_);
  return out;
}

double Regularizer::subgradient_distance(const Vec& x, const Vec& u) const {
  require(x.size() == dim_ && u.size() == dim_, "regularizer: dimension mismatch");
  switch (kind_) {
    case Kind::zero: return u.norm();
    case Kind::abs:
    case Kind::l1: {
      double d2 = 0.0;
      for (int i = 0; i < dim_; ++i) {
        double c;
        if (x[i] > 0.0) c = u[i] - weight_;
        else if (x[i] < 0.0) c = u[i] + weight_;
        else c = std::max(std::abs(u[i]) - weight_, 0.0);
        d2 += c * c;
      }
      return std::sqrt(d2);
    }
    case Kind::group_l2: {
      const double nx = x.norm();
      if (nx == 0.0) return std::max(u.norm() - weight_, 0.0);
      return (u - (weight_ / nx) * x).norm();
    }
    case Kind::linf: {
      if (dim_ == 0) return 0.0;
      const double mx = x.cwiseAbs().maxCoeff();
      if (mx == 0.0) return (u - project_l1_ball(u, weight_)).norm();
      // The subdifferential is weight * conv{ sign(x_i) e_i : |x_i| = max }.
      const double tie = mx * 1e-12;
      std::vector<int> sup;
      double off2 = 0.0;
      for (int i = 0; i < dim_; ++i) {
        if (std::abs(x[i]) >= mx - tie) sup.push_back(i);
        else off2 += u[i] * u[i];
      }
      Vec z(static_cast<int>(sup.size()));
      for (std::size_t k = 0; k < sup.size(); ++k)
        z[static_cast<int>(k)] = x[sup[k]] >= 0.0 ? u[sup[k]] : -u[sup[k]];
      const Vec zp = project_simplex(z, weight_);
      return std::sqrt(off2 + (z - zp).squaredNorm());
    }
  }
  return 0.0;
}

}  // namespace pdsplit
