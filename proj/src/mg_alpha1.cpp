#include "mgpath/mg_alpha1.hpp"

#include <cmath>

#include "mgpath/errors.hpp"
#include "mgpath/parallel.hpp"

namespace mgpath {
namespace {

void require_alpha1(const MGParams& mg) {
  validate_mg(mg);
  if (mg.alpha != 1.0) throw DomainError("alpha", "this pricer requires alpha = 1");
  require_strict_correlation(mg);
}

// Sums over slices. With `ref_mean`, the quadratic part of s0 is taken
// relative to a Gaussian reference of the same variance, so s0 becomes the
// log importance weight.
PathFunctionals accumulate(const Eigen::VectorXd& v, const Eigen::VectorXd& yh, double dt, double tau,
                           const MGParams& mg, double rate, VariantMode mode, const Eigen::VectorXd* ref_mean) {
  const double xi2 = mg.xi * mg.xi;
  double quad = 0.0, pot = 0.0, i_e = 0.0, i_half = 0.0, i_v = 0.0, i_neg = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double y = yh(i);
    const double dev = v(i) - drift_alpha1(mg, y);
    double q = dev * dev;
    if (ref_mean) {
      const double ref = v(i) - (*ref_mean)(i);
      q -= ref * ref;
    }
    quad += q;
    const double e_neg = std::exp(-y);
    pot += e_neg;
    const double e_half = std::exp(0.5 * y);
    i_e += std::exp(y);
    i_half += e_half;
    i_v += e_half * v(i);
    i_neg += std::sqrt(e_neg);
  }
  const double rho = mg.rho;
  const double drift_coeff = mode == VariantMode::exact ? mg.xi / 4.0 : mg.xi / 2.0;
  PathFunctionals f;
  f.s0 = -quad * dt / (2.0 * xi2);
  if (mode == VariantMode::exact) f.s0 += 0.5 * mg.lambda * pot * dt;
  f.sigma_tilde_sq = (1.0 - rho * rho) * i_e * dt / tau;
  f.r_tilde = rate + (-0.5 * rho * rho * i_e + rho * (drift_coeff - mg.mu / mg.xi) * i_half - (rho / mg.xi) * i_v -
                      (mg.lambda * rho / mg.xi) * i_neg) *
                         dt / tau;
  return f;
}

}  // namespace

double drift_alpha1(const MGParams& mg, double y) { return -(mg.lambda * std::exp(-y) + mg.mu - 0.5 * mg.xi * mg.xi); }

PathFunctionals functionals_alpha1(const VelocityPath& path, const MGParams& mg, double rate, VariantMode mode,
                                   Discretization rule) {
  require_alpha1(mg);
  const TildeYPath y = tilde_y(path, mg.y);
  return accumulate(path.values, slice_points(y, rule), path.grid.dt(), path.grid.tau(), mg, rate, mode, nullptr);
}

PathFunctionals config_space_functionals(const TildeYPath& y_path, const GridSpec& grid, const MGParams& mg,
                                         double rate, Discretization rule) {
  require_alpha1(mg);
  if (mg.lambda != 0.0) throw DomainError("lambda", "configuration-space form requires lambda = 0");
  const auto n = static_cast<Eigen::Index>(grid.n_steps());
  if (y_path.values.size() != n + 1) throw DomainError("n_steps", "path length must be n_steps + 1");
  const double dt = grid.dt();
  const Eigen::VectorXd v = (y_path.values.tail(n) - y_path.values.head(n)) / dt;
  PathFunctionals f = accumulate(v, slice_points(y_path, rule), dt, grid.tau(), mg, rate, VariantMode::exact, nullptr);

  // Replace the discretized e^{y/2} v integral by its closed form.
  const Eigen::VectorXd yh = slice_points(y_path, rule);
  double i_v = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) i_v += std::exp(0.5 * yh(i)) * v(i);
  const double exact = 2.0 * (std::exp(0.5 * y_path.values(n)) - std::exp(0.5 * y_path.values(0)));
  f.r_tilde += (mg.rho / mg.xi) * (i_v * dt - exact) / grid.tau();
  return f;
}

std::vector<PathSample> sample_alpha1(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                                      const MCSpec& mc, const Alpha1Options& opts) {
  validate_market(market);
  require_alpha1(mg);
  validate_mc(mc);
  require_same_horizon(market, grid);
  const double xi2 = mg.xi * mg.xi;
  const double gauss_mean = -(mg.mu - 0.5 * xi2);

  std::vector<PathSample> out(mc.n_paths);
  parallel_for(mc.n_paths, [&](std::size_t p) {
    NormalStream z = path_stream(mc, p);
    VelocityPath path{Eigen::VectorXd(), grid};
    Eigen::VectorXd ref_mean, ref_var;
    auto mean_fn = [&](double y) {
      return opts.reference == ReferenceMeasure::gaussian ? gauss_mean : drift_alpha1(mg, y);
    };
    sample_causal(grid, mg.y, mean_fn, [&](double) { return xi2; }, z, path.values, ref_mean, ref_var);
    const TildeYPath y = tilde_y(path, mg.y);
    const PathFunctionals f = accumulate(path.values, slice_points(y, opts.rule), grid.dt(), grid.tau(), mg,
                                         market.rate, opts.mode, &ref_mean);
    check_log_weight(f.s0, p);
    out[p] = {f.s0, y.values(0), f.r_tilde, f.sigma_tilde_sq};
  });
  return out;
}

PriceEstimate price_alpha1(const MarketParams& market, const MGParams& mg, const GridSpec& grid, const MCSpec& mc,
                           const Alpha1Options& opts) {
  const auto samples = sample_alpha1(market, mg, grid, mc, opts);
  return price_from_samples(samples, market, mc.antithetic);
}

KernelTable kernel_estimate_alpha1(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                                   const MCSpec& mc, const KernelSpec& spec, const Alpha1Options& opts) {
  const auto samples = sample_alpha1(market, mg, grid, mc, opts);
  return build_kernel_table(samples, market, spec);
}

}  // namespace mgpath
