#include "pdsplit/problem.hpp"

#include <algorithm>
#include <cmath>

namespace pdsplit {

LeastSquares::LeastSquares(Dataset data) : data_(std::move(data)) {
  require(data_.features.rows() > 0 && data_.features.cols() > 0,
          "least squares: empty design matrix");
  require(data_.labels.size() == data_.features.rows(),
          "least squares: label count does not match design rows");
  design_norm_ = power_iteration_norm(LinearMap::dense(data_.features, "design")).value;
  require(design_norm_ > 0.0, "least squares: zero design matrix");
  beta_ = static_cast<double>(sample_count()) / (2.0 * design_norm_ * design_norm_);
}

double LeastSquares::value(const Vec& w) const {
  require(w.size() == dim(), "least squares: dimension mismatch");
  return (data_.features * w - data_.labels).squaredNorm() / sample_count();
}

Vec LeastSquares::gradient(const Vec& w) const {
  require(w.size() == dim(), "least squares: dimension mismatch");
  return (2.0 / sample_count()) *
         (data_.features.transpose() * (data_.features * w - data_.labels));
}

Vec LeastSquares::subsample_gradient(const Vec& w, const std::vector<int>& rows) const {
  require(w.size() == dim(), "least squares: dimension mismatch");
  require(!rows.empty(), "least squares: empty subsample");
  Vec g = Vec::Zero(dim());
  for (int i : rows) {
    require(i >= 0 && i < sample_count(), "least squares: subsample row out of range");
    const double r = data_.features.row(i).dot(w) - data_.labels[i];
    g += r * data_.features.row(i).transpose();
  }
  return (2.0 / static_cast<double>(rows.size())) * g;
}

BlockAnalysisOperator CompositeProblem::analysis_operator() const {
  std::vector<LinearMap> maps;
  maps.reserve(terms.size());
  for (const auto& t : terms) maps.push_back(t.op);
  return BlockAnalysisOperator(dim(), std::move(maps));
}

std::vector<int> CompositeProblem::dual_dims() const {
  std::vector<int> dims;
  dims.reserve(terms.size());
  for (const auto& t : terms) dims.push_back(t.op.out_dim());
  return dims;
}

double CompositeProblem::objective(const Vec& w) const {
  double val = smooth->value(w) + f.evaluate(w);
  for (const auto& t : terms) val += t.g.evaluate(t.op.apply(w));
  return val;
}

CompositeProblem assemble_group_lasso_indices(Dataset data, double weight,
                                              std::vector<std::vector<int>> groups) {
  require(weight >= 0.0, "group lasso: weight must be nonnegative");
  auto smooth = std::make_shared<const LeastSquares>(std::move(data));
  const int p = smooth->dim();

  CompositeProblem problem{smooth, Regularizer::zero(p), {}, {}};
  for (std::size_t l = 0; l < groups.size(); ++l) {
    auto& g = groups[l];
    require(!g.empty(), "group lasso: group " + std::to_string(l + 1) + " is empty");
    std::sort(g.begin(), g.end());
    require(std::adjacent_find(g.begin(), g.end()) == g.end(),
            "group lasso: group " + std::to_string(l + 1) + " repeats an index");
    for (int i : g)
      require(i >= 0 && i < p, "group lasso: group " + std::to_string(l + 1) +
                                   " index " + std::to_string(i) + " outside [0, " +
                                   std::to_string(p) + ")");
    problem.terms.push_back(
        {Regularizer::group_l2(static_cast<int>(g.size()), weight),
         LinearMap::coordinate_projection(p, g, "group " + std::to_string(l + 1))});
  }
  problem.coordinate_groups = std::move(groups);
  return problem;
}

CompositeProblem assemble_group_lasso(Dataset data, double weight,
                                      const std::vector<std::pair<int, int>>& group_ranges) {
  const int p = static_cast<int>(data.features.cols());
  std::vector<std::vector<int>> groups;
  groups.reserve(group_ranges.size());
  for (std::size_t l = 0; l < group_ranges.size(); ++l) {
    const auto [lo, hi] = group_ranges[l];
    require(lo >= 1 && hi >= lo, "group lasso: bad range for group " + std::to_string(l + 1));
    std::vector<int> g;
    for (int j = lo; j <= hi && j <= p; ++j) g.push_back(j - 1);
    require(!g.empty(), "group lasso: group " + std::to_string(l + 1) +
                            " lies entirely beyond p = " + std::to_string(p));
    groups.push_back(std::move(g));
  }
  return assemble_group_lasso_indices(std::move(data), weight, std::move(groups));
}

}  // namespace pdsplit
