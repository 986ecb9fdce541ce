#include "mgpath/black_scholes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mgpath/quadrature.hpp"

namespace mgpath {
namespace {

constexpr double kTruncationSd = 12.0;

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma", "must be positive");
}

// Mean and sd of x0 given x = ln S under the discounted transition density.
struct Terminal {
  double mean;
  double sd;
};

Terminal terminal_law(const MarketParams& m, double sigma) {
  return {std::log(m.spot) + m.tau * (m.rate - 0.5 * sigma * sigma), sigma * std::sqrt(m.tau)};
}

}  // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double bs_call_value(double spot, double strike, double rate, double variance, double tau) {
  if (!(variance * tau > 0.0)) return std::max(spot - strike * std::exp(-rate * tau), 0.0);
  const double s = std::sqrt(variance * tau);
  const double d_plus = (std::log(spot / strike) + tau * (rate + 0.5 * variance)) / s;
  const double d_minus = d_plus - s;
  return spot * norm_cdf(d_plus) - strike * std::exp(-rate * tau) * norm_cdf(d_minus);
}

BSResult bs_price(const MarketParams& market, double sigma) {
  validate_market(market);
  require_sigma(sigma);
  const double s = sigma * std::sqrt(market.tau);
  BSResult out;
  out.d_plus = (std::log(market.spot / market.strike) + market.tau * (market.rate + 0.5 * sigma * sigma)) / s;
  out.d_minus = out.d_plus - s;
  out.price = market.spot * norm_cdf(out.d_plus) -
              market.strike * std::exp(-market.rate * market.tau) * norm_cdf(out.d_minus);
  return out;
}

double bs_kernel(double tau, double dx, double rate, double sigma) {
  if (!(tau > 0.0)) throw DomainError("tau", "must be positive");
  require_sigma(sigma);
  const double var = tau * sigma * sigma;
  const double u = dx + tau * (rate - 0.5 * sigma * sigma);
  return std::exp(-rate * tau) / std::sqrt(2.0 * std::numbers::pi * var) * std::exp(-u * u / (2.0 * var));
}

double bs_price_quadrature(const MarketParams& market, double sigma) {
  validate_market(market);
  require_sigma(sigma);
  const auto [mean, sd] = terminal_law(market, sigma);
  const double x = std::log(market.spot);
  const double lo = std::max(std::log(market.strike), mean - kTruncationSd * sd);
  const double hi = mean + kTruncationSd * sd;
  if (lo >= hi) return 0.0;
  return integrate(
      [&](double x0) { return bs_kernel(market.tau, x - x0, market.rate, sigma) * (std::exp(x0) - market.strike); },
      lo, hi, 128, 20);
}

double bs_put_quadrature(const MarketParams& market, double sigma) {
  validate_market(market);
  require_sigma(sigma);
  const auto [mean, sd] = terminal_law(market, sigma);
  const double x = std::log(market.spot);
  const double lo = mean - kTruncationSd * sd;
  const double hi = std::min(std::log(market.strike), mean + kTruncationSd * sd);
  if (lo >= hi) return 0.0;
  return integrate(
      [&](double x0) { return bs_kernel(market.tau, x - x0, market.rate, sigma) * (market.strike - std::exp(x0)); },
      lo, hi, 128, 20);
}

}  // namespace mgpath
