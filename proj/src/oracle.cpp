#include "pdsplit/oracle.hpp"

#include <cmath>

namespace pdsplit {

GradientOracle::GradientOracle(Kind kind, double sig, double b0, double growth,
                               int batch, std::uint64_t seed)
    : kind_(kind), sig_(sig), b0_(b0), growth_(growth), batch_(batch), rng_(seed) {}

GradientOracle GradientOracle::exact() {
  return GradientOracle(Kind::exact, 0.0, 1.0, 0.0, 1, 0);
}

GradientOracle GradientOracle::gaussian_decay(double sig, std::uint64_t seed) {
  require(sig >= 0.0, "oracle: sig must be nonnegative");
  return GradientOracle(Kind::gaussian_decay, sig, 1.0, 0.0, 1, seed);
}

GradientOracle GradientOracle::minibatch_growing(double b0, double growth,
                                                 std::uint64_t seed) {
  require(b0 >= 1.0, "oracle: initial batch must be at least 1");
  require(growth > 0.0, "oracle: batch growth exponent must be positive");
  return GradientOracle(Kind::minibatch_growing, 0.0, b0, growth, 1, seed);
}

GradientOracle GradientOracle::minibatch_fixed(int batch, std::uint64_t seed) {
  require(batch >= 1, "oracle: batch size must be at least 1");
  return GradientOracle(Kind::minibatch_fixed, 0.0, 1.0, 0.0, batch, seed);
}

std::string GradientOracle::kind_name() const {
  switch (kind_) {
    case Kind::exact: return "exact";
    case Kind::gaussian_decay: return "gaussian_decay";
    case Kind::minibatch_growing: return "minibatch_growing";
    case Kind::minibatch_fixed: return "minibatch_fixed";
  }
  return "?";
}

Vec GradientOracle::draw(const LeastSquares& smooth, const Vec& u, int k) {
  require(k >= 1, "oracle: query index must be >= 1");
  ++draw_count_;
  switch (kind_) {
    case Kind::exact:
      return smooth.gradient(u);
    case Kind::gaussian_decay: {
      Vec g = smooth.gradient(u);
      if (sig_ > 0.0)
        g += (std::sqrt(sig_) / static_cast<double>(k)) * rng_.gaussian_vec(smooth.dim());
      return g;
    }
    case Kind::minibatch_growing: {
      const int n = smooth.sample_count();
      const int size = std::min<int>(
          n, static_cast<int>(std::ceil(b0_ * std::pow(static_cast<double>(k), 1.0 + growth_))));
      return smooth.subsample_gradient(u, rng_.sample_without_replacement(n, size));
    }
    case Kind::minibatch_fixed: {
      const int n = smooth.sample_count();
      return smooth.subsample_gradient(
          u, rng_.sample_without_replacement(n, std::min(batch_, n)));
    }
  }
  return smooth.gradient(u);
}

std::pair<double, double> empirical_oracle_audit(GradientOracle& oracle,
                                                 const LeastSquares& smooth,
                                                 const Vec& u, int k, int draws) {
  require(draws >= 1, "oracle audit: need at least one draw");
  const Vec g = smooth.gradient(u);
  Vec mean = Vec::Zero(smooth.dim());
  double second = 0.0;
  for (int t = 0; t < draws; ++t) {
    const Vec r = oracle.draw(smooth, u, k);
    mean += r;
    second += (r - g).squaredNorm();
  }
  mean /= draws;
  return {(mean - g).norm(), second / draws};
}

}  // namespace pdsplit
