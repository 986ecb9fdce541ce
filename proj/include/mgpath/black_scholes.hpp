#pragma once

#include "mgpath/params.hpp"

namespace mgpath {

struct BSResult {
  double price = 0.0;
  double d_plus = 0.0;
  double d_minus = 0.0;
};

/// Standard normal CDF via erfc.
double norm_cdf(double x);

/// European call, S N(d+) - K e^{-r tau} N(d-).
BSResult bs_price(const MarketParams& market, double sigma);

/// Same formula without validation, parametrized by variance. Used inside
/// path integrands where the effective rate may be negative.
double bs_call_value(double spot, double strike, double rate, double variance, double tau);

/// Transition density in dx = x - x0 over time tau, discounted by e^{-r tau}.
double bs_kernel(double tau, double dx, double rate, double sigma);

/// Call price by integrating bs_kernel against (e^{x0} - K)^+.
double bs_price_quadrature(const MarketParams& market, double sigma);

/// Put price by integrating bs_kernel against (K - e^{x0})^+.
double bs_put_quadrature(const MarketParams& market, double sigma);

}  // namespace mgpath
