#include "mgpath/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "mgpath/black_scholes.hpp"
#include "mgpath/errors.hpp"
#include "mgpath/parallel.hpp"

namespace mgpath {

double path_price(const PathSample& s, const MarketParams& m) {
  const double call = bs_call_value(m.spot, m.strike, s.r_tilde, s.sigma_tilde_sq, m.tau);
  return std::exp(s.log_weight + m.tau * (s.r_tilde - m.rate)) * call;
}

PriceEstimate price_from_samples(std::span<const PathSample> samples, const MarketParams& market, bool paired) {
  std::vector<double> f(samples.size()), w(samples.size());
  parallel_for(samples.size(), [&](std::size_t p) {
    f[p] = path_price(samples[p], market);
    w[p] = std::exp(samples[p].log_weight);
  });
  return summarize(f, w, paired);
}

void check_log_weight(double log_weight, std::size_t path) {
  if (!std::isfinite(log_weight) || std::abs(log_weight) > 700.0)
    throw NumericalError(path, "importance log-weight " + std::to_string(log_weight) + " out of range");
}

KernelTable build_kernel_table(std::span<const PathSample> samples, const MarketParams& market,
                               const KernelSpec& spec) {
  const std::size_t n = samples.size();
  if (n < 2) throw DomainError("n_paths", "kernel table needs at least two paths");
  const double x = std::log(market.spot);
  const double disc = std::exp(-market.rate * market.tau);

  std::vector<double> y0(n), mean(n), sd(n);
  for (std::size_t p = 0; p < n; ++p) {
    y0[p] = samples[p].y0;
    mean[p] = x + market.tau * (samples[p].r_tilde - 0.5 * samples[p].sigma_tilde_sq);
    sd[p] = std::sqrt(market.tau * samples[p].sigma_tilde_sq);
  }
  const auto ym = mean_and_error(y0);
  const double y_sd = ym.stderr * std::sqrt(static_cast<double>(n));
  // Degenerate spread (frozen volatility): keep a finite-width bin around y.
  const double half_y = std::max(spec.y_span_sd * y_sd, 1e-6);
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  for (std::size_t p = 0; p < n; ++p) {
    x_lo = std::min(x_lo, mean[p] - spec.x_span_sd * sd[p]);
    x_hi = std::max(x_hi, mean[p] + spec.x_span_sd * sd[p]);
  }

  KernelTable t;
  const auto nx = static_cast<Eigen::Index>(spec.n_x_bins);
  const auto ny = static_cast<Eigen::Index>(spec.n_y_bins);
  t.x_edges = Eigen::VectorXd::LinSpaced(nx + 1, x_lo, x_hi);
  t.y_edges = Eigen::VectorXd::LinSpaced(ny + 1, ym.mean - half_y, ym.mean + half_y);
  const double dx = (x_hi - x_lo) / static_cast<double>(nx);
  const double dy = 2.0 * half_y / static_cast<double>(ny);

  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(nx, ny), sum_sq = Eigen::MatrixXd::Zero(nx, ny);
  std::vector<double> total(n, 0.0);
  Eigen::VectorXd cdf(nx + 1);
  // Sequential in path order so the table does not depend on thread count.
  for (std::size_t p = 0; p < n; ++p) {
    const double yb = (y0[p] - t.y_edges(0)) / dy;
    if (!(yb >= 0.0) || yb >= static_cast<double>(ny)) {
      ++t.dropped_paths;
      continue;
    }
    const auto j = static_cast<Eigen::Index>(yb);
    const double mass = disc * std::exp(samples[p].log_weight);
    for (Eigen::Index k = 0; k <= nx; ++k) cdf(k) = norm_cdf((t.x_edges(k) - mean[p]) / sd[p]);
    for (Eigen::Index k = 0; k < nx; ++k) {
      const double c = mass * (cdf(k + 1) - cdf(k));
      sum(k, j) += c;
      sum_sq(k, j) += c * c;
    }
    total[p] = mass * (cdf(nx) - cdf(0));
  }

  const double nn = static_cast<double>(n);
  const double area = dx * dy;
  t.density = sum / (nn * area);
  const Eigen::MatrixXd var = ((sum_sq / nn) - (sum / nn).cwiseAbs2()).cwiseMax(0.0) * (nn / (nn - 1.0));
  t.stderr = (var / nn).cwiseSqrt() / area;
  const auto ti = mean_and_error(total);
  t.integral = ti.mean;
  t.integral_stderr = ti.stderr;
  return t;
}

std::string kernel_csv(const KernelTable& t) {
  std::ostringstream os;
  os.precision(17);
  os << "x0,y0,density,stderr\n";
  for (Eigen::Index k = 0; k < t.density.rows(); ++k) {
    const double xc = 0.5 * (t.x_edges(k) + t.x_edges(k + 1));
    for (Eigen::Index j = 0; j < t.density.cols(); ++j) {
      const double yc = 0.5 * (t.y_edges(j) + t.y_edges(j + 1));
      os << xc << ',' << yc << ',' << t.density(k, j) << ',' << t.stderr(k, j) << '\n';
    }
  }
  return os.str();
}

}  // namespace mgpath

