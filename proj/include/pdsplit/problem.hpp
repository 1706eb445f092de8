#pragma once

#include "pdsplit/dataset.hpp"
#include "pdsplit/linear_map.hpp"
#include "pdsplit/prox.hpp"
#include "pdsplit/types.hpp"

#include <memory>
#include <vector>

namespace pdsplit {

/// Mean squared error F(w) = (1/n) ||Phi w - y||^2. The gradient is
/// (2/n) Phi^T (Phi w - y), Lipschitz with constant 2 ||Phi||^2 / n, so F
/// satisfies the cocoercivity inequality with modulus beta = n/(2||Phi||^2).
class LeastSquares {
 public:
  explicit LeastSquares(Dataset data);

  double value(const Vec& w) const;
  Vec gradient(const Vec& w) const;
  /// (2/|S|) sum_{i in S} (<w, Phi_i> - y_i) Phi_i; unbiased for the full
  /// gradient when S is drawn uniformly.
  Vec subsample_gradient(const Vec& w, const std::vector<int>& rows) const;

  double beta() const { return beta_; }
  double design_norm() const { return design_norm_; }
  int dim() const { return static_cast<int>(data_.features.cols()); }
  int sample_count() const { return static_cast<int>(data_.features.rows()); }
  const Dataset& data() const { return data_; }

 private:
  Dataset data_;
  double design_norm_;
  double beta_;
};

/// min_w F(w) + f(w) + sum_k g_k(D_k w)
struct CompositeProblem {
  struct Term {
    Regularizer g;
    LinearMap op;
  };

  std::shared_ptr<const LeastSquares> smooth;
  Regularizer f;
  std::vector<Term> terms;
  /// Populated when every term selects coordinates (enables the joint prox
  /// used by the one-operator solver); empty otherwise.
  std::vector<std::vector<int>> coordinate_groups;

  int dim() const { return smooth->dim(); }
  BlockAnalysisOperator analysis_operator() const;
  std::vector<int> dual_dims() const;

  double objective(const Vec& w) const;
  Vec smooth_gradient(const Vec& w) const { return smooth->gradient(w); }
};

/// Builds the grouped sparse polynomial regression problem: f = 0 and one
/// weight * ||.||_2 term per coordinate group. Group indices are 1-based
/// inclusive ranges; indices beyond p are clamped away, and a group that
/// ends up empty is a configuration error.
CompositeProblem assemble_group_lasso(Dataset data, double weight,
                                      const std::vector<std::pair<int, int>>& group_ranges);

/// As above with explicit 0-based index sets.
CompositeProblem assemble_group_lasso_indices(Dataset data, double weight,
                                              std::vector<std::vector<int>> groups);

}  // namespace pdsplit
