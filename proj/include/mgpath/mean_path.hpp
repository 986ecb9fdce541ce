#pragma once

#include <cstddef>

#include "mgpath/params.hpp"
#include "mgpath/stats.hpp"

namespace mgpath {

/// The effective-variance term of the mean-path formula is (1 - rho^2) e^{y_m}.
/// variance:   that expression is sigma*^2
/// volatility: that expression is sigma*, so sigma*^2 is its square
enum class SigmaReading { variance, volatility };

struct MeanPathOptions {
  SigmaReading reading = SigmaReading::variance;
  std::size_t nodes = 64;       // Gauss-Hermite nodes per axis, first pass
  std::size_t max_nodes = 256;
  double tolerance = 1e-6;      // relative change accepted as converged
  double fail_tolerance = 1e-4; // beyond this at max_nodes: ConvergenceError
};

struct MeanPathResult {
  double price = 0.0;
  std::size_t nodes = 0;          // per axis, final pass
  double relative_change = 0.0;   // last doubling
};

/// Joint density of v1 = int v dt and v2 = (1/tau) int t v dt under the
/// Gaussian path measure, in the explicit quadratic-form shape
/// 2 v1^2 + 6 v2^2 - 6 v1 v2.
double mean_path_density(const MGParams& mg, double tau, double v1, double v2);

/// Payoff bracket e^{Lambda} (S e^{tau dr*} N(d*+) - e^{-r tau} K N(d*-)) at (v1, v2),
/// Lambda collecting the lambda-dependent part of S0*.
double mean_path_integrand(const MarketParams& market, const MGParams& mg, double v1, double v2,
                           SigmaReading reading = SigmaReading::variance);

/// Two-dimensional Gauss-Hermite integration of the integrand against the
/// (v1, v2) Gaussian, doubling nodes until converged.
MeanPathResult price_mean_path(const MarketParams& market, const MGParams& mg, const MeanPathOptions& opts = {});

/// Monte Carlo over full Gaussian velocity paths with y~(t) replaced by its
/// time average y_m in every ordinary time integral.
PriceEstimate mean_path_oracle(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                               const MCSpec& mc);

}  // namespace mgpath
