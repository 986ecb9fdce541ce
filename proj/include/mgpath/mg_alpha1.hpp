#pragma once

#include <vector>

#include "mgpath/gauss_path.hpp"
#include "mgpath/kernel.hpp"
#include "mgpath/params.hpp"
#include "mgpath/stats.hpp"

namespace mgpath {

/// exact: functionals of the full Lagrangian L.
/// symmetrized: functionals rebuilt from the classical L0 (no h'/2 term,
/// drift coefficient of the e^{y/2} integral changes from xi/4 to xi/2).
enum class VariantMode { exact, symmetrized };

/// Sampling law for the velocities.
///   gaussian:      v_i ~ N(-(mu - xi^2/2), xi^2/dt), all lambda dependence in the weight
///   drift_matched: v_i ~ N(h(y~_{i+1}), xi^2/dt), h the full drift
enum class ReferenceMeasure { gaussian, drift_matched };

struct PathFunctionals {
  double s0 = 0.0;
  double sigma_tilde_sq = 0.0;
  double r_tilde = 0.0;
  double log_jacobian = 0.0;
};

struct Alpha1Options {
  VariantMode mode = VariantMode::exact;
  ReferenceMeasure reference = ReferenceMeasure::drift_matched;
  Discretization rule = Discretization::midpoint;
};

/// Drift of y in velocity form at alpha = 1: h(y) = -(lambda e^{-y} + mu - xi^2/2).
double drift_alpha1(const MGParams& mg, double y);

PathFunctionals functionals_alpha1(const VelocityPath& path, const MGParams& mg, double rate,
                                   VariantMode mode = VariantMode::exact,
                                   Discretization rule = Discretization::midpoint);

/// Same functionals from a position path y_0..y_n (y_n the present value),
/// velocities by finite differences and the e^{y/2} dy integral in closed
/// form. Requires alpha = 1, lambda = 0.
PathFunctionals config_space_functionals(const TildeYPath& y_path, const GridSpec& grid, const MGParams& mg,
                                         double rate, Discretization rule = Discretization::midpoint);

std::vector<PathSample> sample_alpha1(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                                      const MCSpec& mc, const Alpha1Options& opts = {});

PriceEstimate price_alpha1(const MarketParams& market, const MGParams& mg, const GridSpec& grid, const MCSpec& mc,
                           const Alpha1Options& opts = {});

KernelTable kernel_estimate_alpha1(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                                   const MCSpec& mc, const KernelSpec& spec = {}, const Alpha1Options& opts = {});

}  // namespace mgpath
