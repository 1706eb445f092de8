#pragma once

#include "pdsplit/problem.hpp"
#include "pdsplit/rng.hpp"
#include "pdsplit/types.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace pdsplit {

/// Stochastic estimate of the smooth gradient at the queried point. All
/// kinds are unbiased; the decaying kinds also have summable variance along
/// the iterations, which is what the convergence analysis needs.
///
///   exact              the gradient itself
///   gaussian_decay     gradient + N(0, sig/k^2 * Id) at query index k
///   minibatch_growing  subsample of size ceil(b0 * k^(1+growth)), capped at n
///   minibatch_fixed    subsample of constant size (variance not summable;
///                      offered for experiments, flagged by the audit)
class GradientOracle {
 public:
  enum class Kind { exact, gaussian_decay, minibatch_growing, minibatch_fixed };

  static GradientOracle exact();
  static GradientOracle gaussian_decay(double sig, std::uint64_t seed);
  static GradientOracle minibatch_growing(double b0, double growth, std::uint64_t seed);
  static GradientOracle minibatch_fixed(int batch, std::uint64_t seed);

  /// Draw at query index k >= 1 (the per-iteration noise scale is 1/k).
  Vec draw(const LeastSquares& smooth, const Vec& u, int k);

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  bool variance_summable() const { return kind_ != Kind::minibatch_fixed; }
  long draw_count() const { return draw_count_; }
  double sig() const { return sig_; }

 private:
  GradientOracle(Kind kind, double sig, double b0, double growth, int batch,
                 std::uint64_t seed);

  Kind kind_;
  double sig_ = 0.0;
  double b0_ = 1.0;
  double growth_ = 0.1;
  int batch_ = 1;
  Rng rng_;
  long draw_count_ = 0;
};

/// Monte Carlo check of the oracle contract at a fixed point and index:
/// returns (||mean draw - gradient||, mean ||draw - gradient||^2).
std::pair<double, double> empirical_oracle_audit(GradientOracle& oracle,
                                                 const LeastSquares& smooth,
                                                 const Vec& u, int k, int draws);

}  // namespace pdsplit
