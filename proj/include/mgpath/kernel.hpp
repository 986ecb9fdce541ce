#pragma once

#include <cstddef>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "mgpath/params.hpp"
#include "mgpath/stats.hpp"

namespace mgpath {

/// What a path-integral pricer keeps from one sampled velocity path.
struct PathSample {
  double log_weight = 0.0;      // log of e^{S0} x Jacobian / reference density
  double y0 = 0.0;              // y~ at maturity
  double r_tilde = 0.0;
  double sigma_tilde_sq = 0.0;
};

/// Per-path price integrand w e^{tau (r~ - r)} BS(r~, sigma~^2).
double path_price(const PathSample& s, const MarketParams& market);

/// Monte Carlo estimate over samples; `paired` for antithetic streams.
PriceEstimate price_from_samples(std::span<const PathSample> samples, const MarketParams& market, bool paired);

/// Throws NumericalError when a log-weight is non-finite or beyond +-700.
void check_log_weight(double log_weight, std::size_t path);

struct KernelSpec {
  std::size_t n_x_bins = 64;
  std::size_t n_y_bins = 64;
  double y_span_sd = 6.0;   // y0 range: sample mean +- this many sample sd
  double x_span_sd = 10.0;  // x0 range: widest per-path Gaussian +- this many sd
};

/// Bin-averaged density of the discounted kernel over (x0, y0).
struct KernelTable {
  Eigen::VectorXd x_edges;
  Eigen::VectorXd y_edges;
  Eigen::MatrixXd density;  // (x bin, y bin)
  Eigen::MatrixXd stderr;
  double integral = 0.0;
  double integral_stderr = 0.0;
  std::size_t dropped_paths = 0;  // y0 outside the table
};

/// Each path contributes an analytic Gaussian in x0 (mean x + tau(r~ - sigma~^2/2),
/// variance tau sigma~^2) with mass w e^{-r tau}, placed in the bin holding y0.
KernelTable build_kernel_table(std::span<const PathSample> samples, const MarketParams& market,
                               const KernelSpec& spec);

/// CSV with columns x0, y0, density, stderr (bin centres).
std::string kernel_csv(const KernelTable& table);

}  // namespace mgpath
