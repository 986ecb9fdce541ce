#include "mgpath/mg_general.hpp"

#include <cmath>

#include "mgpath/errors.hpp"
#include "mgpath/parallel.hpp"

namespace mgpath {
namespace {

constexpr double kScaleMin = 1e-300;
constexpr double kScaleMax = 1e300;

void require_general(const MGParams& mg) {
  validate_mg(mg);
  require_strict_correlation(mg);
}

// e^{2(alpha-1)y}, the relative diffusion scale; out of range is fatal.
double diffusion_scale(const MGParams& mg, double y, std::size_t path) {
  const double s = std::exp(2.0 * (mg.alpha - 1.0) * y);
  if (!(s >= kScaleMin && s <= kScaleMax))
    throw NumericalError(path, "state-dependent variance out of range at y = " + std::to_string(y));
  return s;
}

// With reference mean/variance given, the quadratic part and the Jacobian
// are taken relative to the reference density and s0 holds the log weight.
GeneralFunctionals accumulate(const Eigen::VectorXd& v, const TildeYPath& y, double dt, double tau,
                              const MGParams& mg, double rate, const GeneralOptions& opts, std::size_t path,
                              const Eigen::VectorXd* ref_mean, const Eigen::VectorXd* ref_var) {
  const Eigen::VectorXd yh = slice_points(y, opts.rule);
  const double c = mg.alpha - 1.0;
  const double xi2 = mg.xi * mg.xi;
  const bool exact = opts.mode == VariantMode::exact;
  GeneralFunctionals f;
  f.h_values.resize(v.size());
  double quad = 0.0, deriv = 0.0, corr = 0.0, jac = 0.0, scale_sum = 0.0;
  double i_e = 0.0, i_drift = 0.0, i_v = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double yi = yh(i);
    const double scale = diffusion_scale(mg, yi, path);
    const double h = exact ? drift_general(mg, yi) : drift_symmetrized(mg, yi);
    f.h_values(i) = h;
    const double dev = v(i) - h;
    quad += dev * dev / scale;
    jac += -c * yi;
    if (ref_mean) {
      const double ref = v(i) - (*ref_mean)(i);
      const double ref_scale = (*ref_var)(i) / xi2;
      quad -= ref * ref / ref_scale;
      jac -= -0.5 * std::log(ref_scale);
    }
    deriv += drift_general_derivative(mg, yi);
    corr += c * dev;
    scale_sum += scale;
    i_e += std::exp(yi);
    i_drift += std::exp(yi * (mg.alpha - 0.5));
    i_v += dev * std::exp(yi * (1.5 - mg.alpha));
  }
  f.s0_quadratic = -quad * dt / (2.0 * xi2);
  if (exact) {
    f.s0_derivative = 0.5 * deriv * dt;
    f.s0_drift_correction = 0.5 * corr * dt;
  }
  f.s0 = f.s0_quadratic + f.s0_derivative + f.s0_drift_correction;
  if (exact && opts.normalization_correction) {
    const double kappa = -c * (7.0 * mg.alpha + 1.0) / 8.0;
    f.s0 -= kappa * xi2 * scale_sum * dt;
  }
  f.log_jacobian = jac;

  const double rho = mg.rho;
  f.sigma_tilde_sq = (1.0 - rho * rho) * i_e * dt / tau;
  double r = rate - (rho / mg.xi) * i_v * dt / tau;
  if (exact) {
    const double rho_sq_coeff = opts.half_rho_sq ? 0.5 : 1.0;
    r += -rho_sq_coeff * rho * rho * i_e * dt / tau - 0.25 * rho * mg.xi * i_drift * dt / tau;
  } else {
    r += -0.5 * rho * rho * i_e * dt / tau;
  }
  f.r_tilde = r;
  return f;
}

}  // namespace

double drift_general(const MGParams& mg, double y) {
  return -(mg.lambda * std::exp(-y) + mg.mu - 0.5 * mg.xi * mg.xi * mg.alpha * std::exp(2.0 * (mg.alpha - 1.0) * y));
}

double drift_general_derivative(const MGParams& mg, double y) {
  return mg.lambda * std::exp(-y) -
         mg.xi * mg.xi * mg.alpha * (mg.alpha - 1.0) * std::exp(2.0 * (mg.alpha - 1.0) * y);
}

double drift_symmetrized(const MGParams& mg, double y) {
  return -(mg.lambda * std::exp(-y) + mg.mu - 0.5 * mg.xi * mg.xi * std::exp(2.0 * (mg.alpha - 1.0) * y));
}

GeneralFunctionals functionals_general(const VelocityPath& path, const MGParams& mg, double rate,
                                       const GeneralOptions& opts) {
  require_general(mg);
  const TildeYPath y = tilde_y(path, mg.y);
  return accumulate(path.values, y, path.grid.dt(), path.grid.tau(), mg, rate, opts, 0, nullptr, nullptr);
}

std::vector<PathSample> sample_general(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                                       const MCSpec& mc, const GeneralOptions& opts) {
  validate_market(market);
  require_general(mg);
  validate_mc(mc);
  require_same_horizon(market, grid);
  const double xi2 = mg.xi * mg.xi;
  const bool exact = opts.mode == VariantMode::exact;

  std::vector<PathSample> out(mc.n_paths);
  parallel_for(mc.n_paths, [&](std::size_t p) {
    NormalStream z = path_stream(mc, p);
    VelocityPath path{Eigen::VectorXd(), grid};
    Eigen::VectorXd ref_mean, ref_var;
    sample_causal(
        grid, mg.y, [&](double y) { return exact ? drift_general(mg, y) : drift_symmetrized(mg, y); },
        [&](double y) { return xi2 * diffusion_scale(mg, y, p); }, z, path.values, ref_mean, ref_var);
    const TildeYPath y = tilde_y(path, mg.y);
    const GeneralFunctionals f =
        accumulate(path.values, y, grid.dt(), grid.tau(), mg, market.rate, opts, p, &ref_mean, &ref_var);
    const double log_w = f.s0 + f.log_jacobian;
    check_log_weight(log_w, p);
    out[p] = {log_w, y.values(0), f.r_tilde, f.sigma_tilde_sq};
  });
  return out;
}

PriceEstimate price_general(const MarketParams& market, const MGParams& mg, const GridSpec& grid, const MCSpec& mc,
                            const GeneralOptions& opts) {
  const auto samples = sample_general(market, mg, grid, mc, opts);
  return price_from_samples(samples, market, mc.antithetic);
}

KernelTable kernel_estimate_general(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                                    const MCSpec& mc, const KernelSpec& spec, const GeneralOptions& opts) {
  const auto samples = sample_general(market, mg, grid, mc, opts);
  return build_kernel_table(samples, market, spec);
}

}  // namespace mgpath
