#include "pdsplit/linear_map.hpp"

#include "pdsplit/rng.hpp"

#include <cmath>
#include <utility>

namespace pdsplit {

namespace {

PowerIterationResult estimate_norm(int in_dim, const LinearMap::Apply& fwd,
                                   const LinearMap::Apply& adj, double tol,
                                   int max_iterations, std::uint64_t seed) {
  PowerIterationResult res;
  if (in_dim == 0) {
    res.converged = true;
    return res;
  }
  Rng rng(seed);
  Vec x = rng.gaussian_vec(in_dim);
  double nx = x.norm();
  if (nx == 0.0) x.setOnes(), nx = x.norm();
  x /= nx;
  double lam_prev = -1.0;
  for (int it = 1; it <= max_iterations; ++it) {
    Vec z = adj(fwd(x));
    const double lam = x.dot(z);  // Rayleigh quotient for D*D
    res.iterations = it;
    const double nz = z.norm();
    if (nz <= 1e-300) {
      // x is (numerically) in the kernel of D*D; with a random start this
      // identifies the zero operator.
      res.value = 0.0;
      res.converged = true;
      return res;
    }
    if (lam_prev >= 0.0 && std::abs(lam - lam_prev) <= tol * std::max(lam, 1e-300)) {
      res.value = std::sqrt(std::max(lam, 0.0));
      res.converged = true;
      return res;
    }
    lam_prev = lam;
    x = z / nz;
  }
  res.value = std::sqrt(std::max(lam_prev, 0.0));
  res.converged = false;
  return res;
}

}  // namespace

LinearMap::LinearMap(int in_dim, int out_dim, Apply forward, Apply adjoint,
                     std::string label)
    : in_dim_(in_dim),
      out_dim_(out_dim),
      forward_(std::move(forward)),
      adjoint_(std::move(adjoint)),
      label_(std::move(label)) {
  require(in_dim >= 0 && out_dim >= 0, label_ + ": negative dimension");
  norm_estimate_ = estimate_norm(in_dim_, forward_, adjoint_, 1e-10, 20000, 7).value;
}

Vec LinearMap::apply(const Vec& x) const {
  if (x.size() != in_dim_)
    throw ConfigError(label_ + ": apply expects dimension " + std::to_string(in_dim_) +
                      ", got " + std::to_string(x.size()));
  return forward_(x);
}

Vec LinearMap::apply_adjoint(const Vec& y) const {
  if (y.size() != out_dim_)
    throw ConfigError(label_ + ": adjoint expects dimension " + std::to_string(out_dim_) +
                      ", got " + std::to_string(y.size()));
  return adjoint_(y);
}

LinearMap LinearMap::identity(int n) {
  return LinearMap(
      n, n, [](const Vec& x) { return x; }, [](const Vec& y) { return y; }, "identity");
}

LinearMap LinearMap::scaled_identity(int n, double c) {
  return LinearMap(
      n, n, [c](const Vec& x) { return Vec(c * x); },
      [c](const Vec& y) { return Vec(c * y); }, "scaled identity");
}

LinearMap LinearMap::zero(int in_dim, int out_dim) {
  return LinearMap(
      in_dim, out_dim, [out_dim](const Vec&) { return Vec(Vec::Zero(out_dim)); },
      [in_dim](const Vec&) { return Vec(Vec::Zero(in_dim)); }, "zero");
}

LinearMap LinearMap::dense(const Mat& a, std::string label) {
  auto m = std::make_shared<Mat>(a);
  return LinearMap(
      static_cast<int>(a.cols()), static_cast<int>(a.rows()),
      [m](const Vec& x) { return Vec(*m * x); },
      [m](const Vec& y) { return Vec(m->transpose() * y); }, std::move(label));
}

LinearMap LinearMap::coordinate_projection(int in_dim, std::vector<int> indices,
                                           std::string label) {
  for (int i : indices)
    require(i >= 0 && i < in_dim,
            label + ": index " + std::to_string(i) + " outside [0, " +
                std::to_string(in_dim) + ")");
  auto idx = std::make_shared<std::vector<int>>(std::move(indices));
  const int out = static_cast<int>(idx->size());
  return LinearMap(
      in_dim, out,
      [idx, out](const Vec& x) {
        Vec y(out);
        for (int k = 0; k < out; ++k) y[k] = x[(*idx)[k]];
        return y;
      },
      [idx, in_dim](const Vec& y) {
        Vec x = Vec::Zero(in_dim);
        for (int k = 0; k < static_cast<int>(idx->size()); ++k) x[(*idx)[k]] += y[k];
        return x;
      },
      std::move(label));
}

LinearMap LinearMap::forward_difference(int p) {
  require(p >= 2, "forward_difference: need dimension >= 2");
  return LinearMap(
      p, p - 1,
      [p](const Vec& x) {
        Vec y(p - 1);
        for (int i = 0; i + 1 < p; ++i) y[i] = x[i + 1] - x[i];
        return y;
      },
      [p](const Vec& y) {
        Vec x = Vec::Zero(p);
        for (int i = 0; i + 1 < p; ++i) {
          x[i + 1] += y[i];
          x[i] -= y[i];
        }
        return x;
      },
      "forward difference");
}

LinearMap LinearMap::compose(const LinearMap& a, const LinearMap& b) {
  require(a.in_dim() == b.out_dim(),
          "compose: inner dimensions differ (" + a.label() + " after " + b.label() + ")");
  auto pa = std::make_shared<LinearMap>(a);
  auto pb = std::make_shared<LinearMap>(b);
  return LinearMap(
      b.in_dim(), a.out_dim(),
      [pa, pb](const Vec& x) { return pa->apply(pb->apply(x)); },
      [pa, pb](const Vec& y) { return pb->apply_adjoint(pa->apply_adjoint(y)); },
      a.label() + "*" + b.label());
}

PowerIterationResult power_iteration_norm(const LinearMap& map, double tol,
                                          int max_iterations, std::uint64_t seed) {
  return estimate_norm(
      map.in_dim(), [&map](const Vec& x) { return map.apply(x); },
      [&map](const Vec& y) { return map.apply_adjoint(y); }, tol, max_iterations, seed);
}

double adjoint_consistency_check(const LinearMap& map, int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Vec x = rng.gaussian_vec(map.in_dim());
    const Vec y = rng.gaussian_vec(map.out_dim());
    const double lhs = map.apply(x).dot(y);
    const double rhs = x.dot(map.apply_adjoint(y));
    const double rel = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
    worst = std::max(worst, rel);
  }
  return worst;
}

BlockAnalysisOperator::BlockAnalysisOperator(int in_dim, std::vector<LinearMap> maps)
    : in_dim_(in_dim), maps_(std::move(maps)) {
  out_dims_.reserve(maps_.size());
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    require(maps_[k].in_dim() == in_dim_,
            "analysis operator: block " + std::to_string(k) + " (" + maps_[k].label() +
                ") acts on dimension " + std::to_string(maps_[k].in_dim()) +
                ", expected " + std::to_string(in_dim_));
    out_dims_.push_back(maps_[k].out_dim());
  }
}

DualBlocks BlockAnalysisOperator::forward(const Vec& w) const {
  DualBlocks v;
  v.blocks.reserve(maps_.size());
  for (const auto& m : maps_) v.blocks.push_back(m.apply(w));
  return v;
}

Vec BlockAnalysisOperator::adjoint_sum(const DualBlocks& v) const {
  require(v.size() == maps_.size(), "analysis operator: block count mismatch");
  Vec out = Vec::Zero(in_dim_);
  for (std::size_t k = 0; k < maps_.size(); ++k) out += maps_[k].apply_adjoint(v[k]);
  return out;
}

}  // namespace pdsplit
