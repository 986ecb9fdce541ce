#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mgpath/params.hpp"
#include "mgpath/rng.hpp"

namespace mgpath {

/// Velocities v_i of the log-variance path, one per slice [t_i, t_{i+1}).
struct VelocityPath {
  Eigen::VectorXd values;
  GridSpec grid;
};

/// Log-variances reconstructed backward from the present value:
/// values(n) = terminal_y and values(i) = values(i+1) - v_i dt.
struct TildeYPath {
  Eigen::VectorXd values;
  double terminal_y = 0.0;
};

/// Where y-dependent integrands are evaluated inside slice i.
///   midpoint:      (y~_i + y~_{i+1}) / 2
///   left_endpoint: y~_i
enum class Discretization { midpoint, left_endpoint };

TildeYPath tilde_y(const VelocityPath& path, double terminal_y);

/// Slice evaluation points for `y`, length n_steps.
Eigen::VectorXd slice_points(const TildeYPath& y, Discretization rule);

/// Draws one path with v_i ~ N(mean_i, variance_scale_i / dt). Slices are
/// filled in reverse order (i = n-1 first) from consecutive draws of `z`, and
/// v_i = mean_i - sd_i * Z so that Z is the calendar-time noise of y.
void sample_reference(const GridSpec& grid, std::span<const double> mean,
                      std::span<const double> variance_scale, NormalStream& z, Eigen::VectorXd& v);

/// Batch form: one path per index of `mc`, each a pure function of
/// (seed, path index).
std::vector<VelocityPath> sample_reference(const GridSpec& grid, std::span<const double> mean,
                                           std::span<const double> variance_scale, const MCSpec& mc);

/// State-dependent reverse-time draw: for i = n-1 down to 0,
/// v_i ~ N(mean_fn(y~_{i+1}), var_fn(y~_{i+1}) / dt), then y~_i = y~_{i+1} - v_i dt.
/// The mean and variance used at each slice are returned alongside.
template <class MeanFn, class VarFn>
void sample_causal(const GridSpec& grid, double terminal_y, MeanFn&& mean_fn, VarFn&& var_fn, NormalStream& z,
                   Eigen::VectorXd& v, Eigen::VectorXd& ref_mean, Eigen::VectorXd& ref_var) {
  const auto n = static_cast<Eigen::Index>(grid.n_steps());
  const double dt = grid.dt();
  v.resize(n);
  ref_mean.resize(n);
  ref_var.resize(n);
  double y = terminal_y;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    ref_mean(i) = mean_fn(y);
    ref_var(i) = var_fn(y);
    v(i) = ref_mean(i) - std::sqrt(ref_var(i) / dt) * z();
    y -= v(i) * dt;
  }
}

struct MomentReport {
  int order = 0;
  /// E[v^order] (dt / xi^2)^(order/2), averaged over slices and paths.
  double ratio = 0.0;
  double stderr = 0.0;
  /// Pairing count (order - 1)!!; 0 for odd orders.
  double expected = 0.0;
  /// For even orders: sample E[v^order] / (sample E[v^2])^(order/2).
  double ratio_to_sample_variance = 0.0;
};

/// Samples centred paths with variance xi^2/dt per slice and measures the
/// normalized moment of the given order (2 to 6).
MomentReport wick_moment_check(const GridSpec& grid, const MCSpec& mc, int order, double xi = 0.3);

}  // namespace mgpath
