#pragma once

#include "pdsplit/types.hpp"

#include <cmath>
#include <string>

namespace pdsplit {

/// Step-size, inertia and relaxation sequences, kept as declarative rules so
/// a run is fully described by a handful of scalars.
///
///   gamma: constant  -> gamma_const
///          harmonic  -> gamma_c / (n + gamma_n0)
///   alpha: zero | constant (alpha_const) | gamma_squared (gamma(n)^2)
///   relaxation: constant lambda_relax in (0, 1]
///
/// gamma_squared inertia inherits summability from a decaying gamma, which
/// is the condition the convergence analysis places on the inertia.
struct Schedules {
  enum class GammaRule { constant, harmonic };
  enum class AlphaRule { zero, constant, gamma_squared };

  GammaRule gamma_rule = GammaRule::constant;
  double gamma_const = 1.0;
  double gamma_c = 15.0;
  double gamma_n0 = 100.0;

  AlphaRule alpha_rule = AlphaRule::zero;
  double alpha_const = 0.0;

  double lambda_relax = 1.0;
  double epsilon = 1e-3;

  double gamma(int n) const {
    return gamma_rule == GammaRule::constant
               ? gamma_const
               : gamma_c / (static_cast<double>(n) + gamma_n0);
  }

  double alpha(int n) const {
    switch (alpha_rule) {
      case AlphaRule::zero: return 0.0;
      case AlphaRule::constant: return alpha_const;
      case AlphaRule::gamma_squared: {
        const double g = gamma(n);
        return g * g;
      }
    }
    return 0.0;
  }

  double lambda(int) const { return lambda_relax; }

  double min_gamma(int horizon) const {
    double m = gamma(0);
    for (int n = 1; n < horizon; ++n) m = std::min(m, gamma(n));
    return m;
  }

  double alpha_partial_sum(int horizon) const {
    double s = 0.0;
    for (int n = 0; n < horizon; ++n) s += alpha(n);
    return s;
  }

  /// Basic feasibility over a horizon: gamma(n) >= epsilon and
  /// alpha(n) in [0, 1 - epsilon], lambda in [epsilon, 1].
  void check(int horizon) const {
    require(epsilon > 0.0 && epsilon < 1.0, "schedules: epsilon must lie in (0, 1)");
    require(lambda_relax >= epsilon && lambda_relax <= 1.0,
            "schedules: relaxation must lie in [epsilon, 1]");
    for (int n = 0; n < horizon; ++n) {
      const double g = gamma(n);
      require(g >= epsilon, "schedules: gamma(" + std::to_string(n) + ") = " +
                                std::to_string(g) + " below epsilon");
      const double a = alpha(n);
      require(a >= 0.0 && a <= 1.0 - epsilon,
              "schedules: alpha(" + std::to_string(n) + ") = " + std::to_string(a) +
                  " outside [0, 1 - epsilon]");
    }
  }
};

}  // namespace pdsplit
