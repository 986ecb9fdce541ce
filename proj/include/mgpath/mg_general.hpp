#pragma once

#include <vector>

#include "mgpath/mg_alpha1.hpp"

namespace mgpath {

struct GeneralFunctionals : PathFunctionals {
  Eigen::VectorXd h_values;  // drift at each slice point
  // Pieces of s0 (exact mode; the last two are 0 when symmetrized).
  double s0_quadratic = 0.0;
  double s0_derivative = 0.0;
  double s0_drift_correction = 0.0;
};

struct GeneralOptions {
  VariantMode mode = VariantMode::exact;
  Discretization rule = Discretization::midpoint;
  /// Adds -kappa xi^2 sum e^{2(alpha-1)y} dt to s0, kappa = -(alpha-1)(7 alpha+1)/8,
  /// which restores unit mass of the exact-mode measure for alpha != 1.
  bool normalization_correction = false;
  /// Uses -rho^2/2 instead of -rho^2 for the <e^y> term of r~ (exact mode).
  bool half_rho_sq = false;
};

/// h(y) = -(lambda e^{-y} + mu - (xi^2 alpha / 2) e^{2(alpha-1)y}).
double drift_general(const MGParams& mg, double y);
/// h'(y) = lambda e^{-y} - xi^2 alpha (alpha-1) e^{2(alpha-1)y}.
double drift_general_derivative(const MGParams& mg, double y);
/// Classical drift h_bar(y) = -(lambda e^{-y} + mu - (xi^2 / 2) e^{2(alpha-1)y}).
double drift_symmetrized(const MGParams& mg, double y);

GeneralFunctionals functionals_general(const VelocityPath& path, const MGParams& mg, double rate,
                                       const GeneralOptions& opts = {});

std::vector<PathSample> sample_general(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                                       const MCSpec& mc, const GeneralOptions& opts = {});

PriceEstimate price_general(const MarketParams& market, const MGParams& mg, const GridSpec& grid, const MCSpec& mc,
                            const GeneralOptions& opts = {});

KernelTable kernel_estimate_general(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                                    const MCSpec& mc, const KernelSpec& spec = {}, const GeneralOptions& opts = {});

}  // namespace mgpath
