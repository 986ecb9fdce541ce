#include "mgpath/mean_path.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mgpath/black_scholes.hpp"
#include "mgpath/errors.hpp"
#include "mgpath/gauss_path.hpp"
#include "mgpath/parallel.hpp"
#include "mgpath/quadrature.hpp"

namespace mgpath {
namespace {

void require_mean_path(const MGParams& mg) {
  validate_mg(mg);
  if (mg.alpha != 1.0) throw DomainError("alpha", "mean-path approximation requires alpha = 1");
  require_strict_correlation(mg);
}

// S e^{r tau} N(d1) - K N(d2): the call value before discounting at rate r.
// Kept in this form because far-tail nodes push r to large negative values
// where e^{-r tau} and e^{r tau} separately overflow.
double forward_call(double spot, double strike, double r, double variance, double tau) {
  const double growth = std::exp(r * tau);
  const double total = variance * tau;
  if (!std::isfinite(total)) return spot * growth;
  if (!(total > 0.0)) return std::max(spot * growth - strike, 0.0);
  const double sd = std::sqrt(total);
  const double d1 = (std::log(spot / strike) + r * tau + 0.5 * total) / sd;
  const double d2 = d1 - sd;
  if (std::isnan(d1)) return spot * growth;
  return spot * growth * norm_cdf(d1) - strike * norm_cdf(d2);
}

// Integrand from the pieces that differ between the closed form and the
// oracle: the two total-derivative integrals, passed already evaluated.
//   neg_v  = int e^{-y~} v dt
//   half_v = int e^{y~/2} v dt
double bracket(const MarketParams& market, const MGParams& mg, double ym, double neg_v, double half_v,
               SigmaReading reading) {
  const double tau = market.tau;
  const double xi2 = mg.xi * mg.xi;
  const double m = mg.mu - 0.5 * xi2;
  const double lam = mg.lambda;
  const double rho = mg.rho;
  const double e_neg = std::exp(-ym);
  const double big_lambda =
      -(lam / xi2) * neg_v - (lam * m * tau / xi2) * e_neg - (lam * lam * tau / (2.0 * xi2)) * e_neg * e_neg +
      0.5 * lam * tau * e_neg;
  const double expr = (1.0 - rho * rho) * std::exp(ym);
  const double sigma_sq = reading == SigmaReading::variance ? expr : expr * expr;
  const double r_star = market.rate - 0.5 * rho * rho * std::exp(ym) +
                        rho * (mg.xi / 4.0 - mg.mu / mg.xi) * std::exp(0.5 * ym) - (rho / (mg.xi * tau)) * half_v -
                        (lam * rho / mg.xi) * std::exp(-0.5 * ym);
  const double fwd = forward_call(market.spot, market.strike, r_star, sigma_sq, tau);
  if (fwd == 0.0) return 0.0;
  return std::exp(big_lambda - tau * market.rate) * fwd;
}

double gh_pass(const MarketParams& market, const MGParams& mg, SigmaReading reading, std::size_t nodes) {
  const double tau = market.tau;
  const double m = mg.mu - 0.5 * mg.xi * mg.xi;
  Eigen::Vector2d mean(-m * tau, -0.5 * m * tau);
  Eigen::Matrix2d cov;
  cov << 1.0, 0.5, 0.5, 1.0 / 3.0;
  cov *= mg.xi * mg.xi * tau;
  const Eigen::Matrix2d chol = cov.llt().matrixL();
  const QuadratureRule gh = gauss_hermite_normal(nodes);

  std::vector<double> row(nodes);
  for (std::size_t a = 0; a < nodes; ++a) {
    double s = 0.0;
    for (std::size_t b = 0; b < nodes; ++b) {
      const Eigen::Vector2d z(gh.nodes(static_cast<Eigen::Index>(a)), gh.nodes(static_cast<Eigen::Index>(b)));
      const Eigen::Vector2d v = mean + chol * z;
      s += gh.weights(static_cast<Eigen::Index>(b)) * mean_path_integrand(market, mg, v(0), v(1), reading);
    }
    row[a] = gh.weights(static_cast<Eigen::Index>(a)) * s;
  }
  double total = 0.0;
  for (double r : row) total += r;
  return total;
}

}  // namespace

double mean_path_density(const MGParams& mg, double tau, double v1, double v2) {
  const double xi2 = mg.xi * mg.xi;
  const double m = mg.mu - 0.5 * xi2;
  const double pref = 2.0 * std::sqrt(3.0) / (xi2 * tau) / (2.0 * std::numbers::pi);
  const double q = 2.0 * v1 * v1 + 6.0 * v2 * v2 - 6.0 * v1 * v2 + tau * m * v1;
  return pref * std::exp(-q / (xi2 * tau) - tau * m * m / (2.0 * xi2));
}

double mean_path_integrand(const MarketParams& market, const MGParams& mg, double v1, double v2,
                           SigmaReading reading) {
  const double y = mg.y;
  const double neg_v = std::exp(-y) * (std::exp(v1) - 1.0);
  const double half_v = 2.0 * (std::exp(0.5 * y) - std::exp(0.5 * (y - v1)));
  return bracket(market, mg, y - v2, neg_v, half_v, reading);
}

MeanPathResult price_mean_path(const MarketParams& market, const MGParams& mg, const MeanPathOptions& opts) {
  validate_market(market);
  require_mean_path(mg);
  if (opts.nodes < 32) throw DomainError("nodes", "need at least 32 nodes per axis");
  if (opts.max_nodes < 2 * opts.nodes) throw DomainError("nodes", "max_nodes must allow one doubling");

  MeanPathResult out;
  std::size_t n = opts.nodes;
  double prev = gh_pass(market, mg, opts.reading, n);
  for (;;) {
    const std::size_t next = 2 * n;
    if (next > opts.max_nodes) break;
    const double cur = gh_pass(market, mg, opts.reading, next);
    const double change = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
    out = {cur, next, change};
    if (change < opts.tolerance) return out;
    prev = cur;
    n = next;
  }
  if (out.relative_change > opts.fail_tolerance)
    throw ConvergenceError("mean-path quadrature: relative change " + std::to_string(out.relative_change) + " at " +
                           std::to_string(out.nodes) + " nodes");
  return out;
}

PriceEstimate mean_path_oracle(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                               const MCSpec& mc) {
  validate_market(market);
  require_mean_path(mg);
  validate_mc(mc);
  require_same_horizon(market, grid);
  const std::size_t n = grid.n_steps();
  const double dt = grid.dt();
  const double tau = grid.tau();
  const std::vector<double> mean(n, -(mg.mu - 0.5 * mg.xi * mg.xi));
  const std::vector<double> scale(n, mg.xi * mg.xi);

  std::vector<double> f(mc.n_paths);
  parallel_for(mc.n_paths, [&](std::size_t p) {
    NormalStream z = path_stream(mc, p);
    VelocityPath path{Eigen::VectorXd(), grid};
    sample_reference(grid, mean, scale, z, path.values);
    const TildeYPath y = tilde_y(path, mg.y);
    const Eigen::VectorXd yh = slice_points(y, Discretization::midpoint);
    double v2 = 0.0, neg_v = 0.0, half_v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      const double t = (static_cast<double>(i) + 0.5) * dt;
      v2 += t * path.values(k) * dt;
      neg_v += std::exp(-yh(k)) * path.values(k) * dt;
      half_v += std::exp(0.5 * yh(k)) * path.values(k) * dt;
    }
    f[p] = bracket(market, mg, mg.y - v2 / tau, neg_v, half_v, SigmaReading::variance);
  });
  const std::vector<double> w(mc.n_paths, 1.0);
  return summarize(f, w, mc.antithetic);
}

}  // namespace mgpath
