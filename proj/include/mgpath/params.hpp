#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "mgpath/errors.hpp"

namespace mgpath {

/// Contract and market state. `tau` is the time to expiry T - t in years.
struct MarketParams {
  double spot = 100.0;
  double strike = 100.0;
  double rate = 0.05;
  double tau = 1.0;
};

/// Merton-Garman stochastic-volatility parameters.
///
///   dV = (lambda + mu V) dt + xi V^alpha dW2,   corr(dW1, dW2) = rho
///
/// The current variance is carried in log form, `y = ln V`.
struct MGParams {
  double lambda = 0.0;
  double mu = 0.0;
  double xi = 0.3;
  double alpha = 1.0;
  double rho = 0.0;
  double y = -3.2188758248682006;  // ln(0.04)

  double variance() const { return std::exp(y); }
  double volatility() const { return std::exp(0.5 * y); }
};

inline double log_variance(double variance) { return std::log(variance); }
inline double variance_from_log(double y) { return std::exp(y); }

/// Uniform time grid over [0, tau].
class GridSpec {
 public:
  GridSpec(double tau, std::size_t n_steps);

  std::size_t n_steps() const { return n_steps_; }
  double dt() const { return dt_; }
  double tau() const { return tau_; }

 private:
  double tau_;
  std::size_t n_steps_;
  double dt_;
};

struct MCSpec {
  std::size_t n_paths = 100000;
  std::uint64_t seed = 42;
  bool antithetic = false;
};

/// Checks every domain invariant; returns the inputs unchanged on success.
struct ValidatedParams {
  MarketParams market;
  MGParams mg;
};
ValidatedParams validate(const MarketParams& market, const MGParams& mg);

void validate_market(const MarketParams& market);
void validate_mg(const MGParams& mg);
void validate_mc(const MCSpec& mc);

/// The grid must cover exactly the contract horizon.
void require_same_horizon(const MarketParams& market, const GridSpec& grid);

/// Path-integral pricers need a non-degenerate x-Gaussian: |rho| < 1.
void require_strict_correlation(const MGParams& mg);

}  // namespace mgpath
