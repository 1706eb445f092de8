#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace pdsplit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Raised when a run is put together inconsistently (dimensions, unknown
/// keys, unsupported feature combinations). Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when step-size/metric conditions required for convergence fail
/// and no override was requested. Maps to CLI exit code 3.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an iteration produces non-finite values.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

/// One element of the product dual space G = G_1 x ... x G_s.
struct DualBlocks {
  std::vector<Vec> blocks;

  DualBlocks() = default;
  explicit DualBlocks(std::vector<Vec> b) : blocks(std::move(b)) {}

  static DualBlocks zeros(const std::vector<int>& dims) {
    DualBlocks d;
    d.blocks.reserve(dims.size());
    for (int m : dims) d.blocks.push_back(Vec::Zero(m));
    return d;
  }

  std::size_t size() const { return blocks.size(); }
  bool empty() const { return blocks.empty(); }
  Vec& operator[](std::size_t k) { return blocks[k]; }
  const Vec& operator[](std::size_t k) const { return blocks[k]; }

  bool allFinite() const {
    for (const auto& b : blocks)
      if (!b.allFinite()) return false;
    return true;
  }

  double dot(const DualBlocks& other) const {
    double s = 0.0;
    for (std::size_t k = 0; k < blocks.size(); ++k) s += blocks[k].dot(other.blocks[k]);
    return s;
  }

  double squaredNorm() const { return dot(*this); }
  double norm() const { return std::sqrt(squaredNorm()); }
};

inline DualBlocks operator+(const DualBlocks& a, const DualBlocks& b) {
  DualBlocks r = a;
  for (std::size_t k = 0; k < r.blocks.size(); ++k) r.blocks[k] += b.blocks[k];
  return r;
}

inline DualBlocks operator-(const DualBlocks& a, const DualBlocks& b) {
  DualBlocks r = a;
  for (std::size_t k = 0; k < r.blocks.size(); ++k) r.blocks[k] -= b.blocks[k];
  return r;
}

inline DualBlocks operator*(double c, const DualBlocks& a) {
  DualBlocks r = a;
  for (auto& b : r.blocks) b *= c;
  return r;
}

}  // namespace pdsplit
