#include "mgpath/gauss_path.hpp"

#include <cmath>

#include "mgpath/errors.hpp"
#include "mgpath/parallel.hpp"
#include "mgpath/stats.hpp"

namespace mgpath {

TildeYPath tilde_y(const VelocityPath& path, double terminal_y) {
  const Eigen::Index n = path.values.size();
  const double dt = path.grid.dt();
  TildeYPath out;
  out.terminal_y = terminal_y;
  out.values.resize(n + 1);
  out.values(n) = terminal_y;
  for (Eigen::Index i = n - 1; i >= 0; --i) out.values(i) = out.values(i + 1) - path.values(i) * dt;
  return out;
}

Eigen::VectorXd slice_points(const TildeYPath& y, Discretization rule) {
  const Eigen::Index n = y.values.size() - 1;
  if (rule == Discretization::left_endpoint) return y.values.head(n);
  return 0.5 * (y.values.head(n) + y.values.tail(n));
}

void sample_reference(const GridSpec& grid, std::span<const double> mean,
                      std::span<const double> variance_scale, NormalStream& z, Eigen::VectorXd& v) {
  const std::size_t n = grid.n_steps();
  v.resize(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = n - 1 - j;
    const double sd = std::sqrt(variance_scale[i] / grid.dt());
    v(static_cast<Eigen::Index>(i)) = mean[i] - sd * z();
  }
}

std::vector<VelocityPath> sample_reference(const GridSpec& grid, std::span<const double> mean,
                                           std::span<const double> variance_scale, const MCSpec& mc) {
  validate_mc(mc);
  if (mean.size() != grid.n_steps() || variance_scale.size() != grid.n_steps())
    throw DomainError("variance_scale", "per-step arrays must have n_steps entries");
  for (double s : variance_scale)
    if (!(s > 0.0)) throw DomainError("variance_scale", "must be positive");

  std::vector<VelocityPath> out(mc.n_paths, VelocityPath{Eigen::VectorXd(), grid});
  parallel_for(mc.n_paths, [&](std::size_t p) {
    NormalStream z = path_stream(mc, p);
    sample_reference(grid, mean, variance_scale, z, out[p].values);
  });
  return out;
}

MomentReport wick_moment_check(const GridSpec& grid, const MCSpec& mc, int order, double xi) {
  if (order < 2 || order > 6) throw DomainError("order", "must be 2..6");
  if (!(xi > 0.0)) throw DomainError("xi", "must be positive");
  validate_mc(mc);

  const std::size_t n = grid.n_steps();
  const std::vector<double> mean(n, 0.0);
  const std::vector<double> scale(n, xi * xi);
  const double unit = std::sqrt(grid.dt()) / xi;

  std::vector<double> moment(mc.n_paths), second(mc.n_paths);
  parallel_for(mc.n_paths, [&](std::size_t p) {
    NormalStream z = path_stream(mc, p);
    Eigen::VectorXd v;
    sample_reference(grid, mean, scale, z, v);
    const Eigen::ArrayXd u = v.array() * unit;
    moment[p] = u.pow(order).mean();
    second[p] = u.square().mean();
  });

  MomentReport report;
  report.order = order;
  const auto me = mean_and_error(moment);
  report.ratio = me.mean;
  report.stderr = me.stderr;
  double pairings = order % 2 == 0 ? 1.0 : 0.0;
  for (int k = order - 1; k > 1 && order % 2 == 0; k -= 2) pairings *= k;
  report.expected = pairings;
  if (order % 2 == 0) {
    const double m2 = pairwise_sum(second) / static_cast<double>(second.size());
    report.ratio_to_sample_variance = me.mean / std::pow(m2, order / 2);
  }
  return report;
}

}  // namespace mgpath
