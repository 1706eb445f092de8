#pragma once

#include "pdsplit/types.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pdsplit {

struct PowerIterationResult {
  double value = 0.0;  ///< estimated operator norm (largest singular value)
  int iterations = 0;
  bool converged = false;
};

/// A bounded linear operator between Euclidean spaces, held as a matching
/// forward/adjoint pair of callables. The operator norm is estimated once at
/// construction (power iteration on D*D) so instances stay immutable and
/// safe to share.
class LinearMap {
 public:
  using Apply = std::function<Vec(const Vec&)>;

  LinearMap(int in_dim, int out_dim, Apply forward, Apply adjoint,
            std::string label = "operator");

  Vec apply(const Vec& x) const;
  Vec apply_adjoint(const Vec& y) const;

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::string& label() const { return label_; }
  double norm_estimate() const { return norm_estimate_; }

  static LinearMap identity(int n);
  static LinearMap scaled_identity(int n, double c);
  static LinearMap zero(int in_dim, int out_dim);
  static LinearMap dense(const Mat& a, std::string label = "dense");
  /// Selects the listed coordinates (0-based), in order.
  static LinearMap coordinate_projection(int in_dim, std::vector<int> indices,
                                         std::string label = "projection");
  /// First-order forward differences, R^p -> R^(p-1).
  static LinearMap forward_difference(int p);
  /// Composition a after b (x -> a(b(x))).
  static LinearMap compose(const LinearMap& a, const LinearMap& b);

 private:
  int in_dim_;
  int out_dim_;
  Apply forward_;
  Apply adjoint_;
  std::string label_;
  double norm_estimate_;
};

/// Estimate of the operator norm via power iteration on D*D with a seeded
/// random start. Relative Rayleigh-quotient stagnation below `tol` stops the
/// iteration; `converged=false` flags exhaustion of `max_iterations`.
PowerIterationResult power_iteration_norm(const LinearMap& map, double tol = 1e-8,
                                          int max_iterations = 10000,
                                          std::uint64_t seed = 7);

/// Max over `trials` random pairs of |<Dx,y> - <x,D*y>| / (1 + |<Dx,y>|).
double adjoint_consistency_check(const LinearMap& map, int trials = 25,
                                 std::uint64_t seed = 11);

/// The analysis side of a composite regularizer: D w = (D_1 w, ..., D_s w).
class BlockAnalysisOperator {
 public:
  BlockAnalysisOperator() = default;
  BlockAnalysisOperator(int in_dim, std::vector<LinearMap> maps);

  DualBlocks forward(const Vec& w) const;
  /// sum_k D_k^* v_k
  Vec adjoint_sum(const DualBlocks& v) const;

  int in_dim() const { return in_dim_; }
  std::size_t block_count() const { return maps_.size(); }
  const LinearMap& map(std::size_t k) const { return maps_[k]; }
  const std::vector<int>& out_dims() const { return out_dims_; }

 private:
  int in_dim_ = 0;
  std::vector<LinearMap> maps_;
  std::vector<int> out_dims_;
};

}  // namespace pdsplit
