#include "mgpath/sde_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "mgpath/black_scholes.hpp"
#include "mgpath/errors.hpp"
#include "mgpath/parallel.hpp"

namespace mgpath {

SpotDrift SpotDrift::parse(const std::string& text) {
  if (text == "rn") return {};
  if (text.rfind("phys:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double phi = std::stod(text.substr(5), &used);
      if (used == text.size() - 5 && std::isfinite(phi)) return {false, phi};
    } catch (const std::exception&) {
    }
  }
  throw DomainError("drift", "expected rn or phys:<phi>, got '" + text + "'");
}

void validate_oracle(const MarketParams& market, const MGParams& mg) {
  validate_market(market);
  if (!(mg.xi >= 0.0)) throw DomainError("xi", "must be >= 0");
  MGParams probe = mg;
  if (probe.xi == 0.0) probe.xi = 1.0;
  validate_mg(probe);
}

SdePath simulate_path(const MGParams& mg, const MarketParams& market, const GridSpec& grid, NormalStream& z,
                      const SpotDrift& drift) {
  const auto n = static_cast<Eigen::Index>(grid.n_steps());
  const double dt = grid.dt();
  const double sq_dt = std::sqrt(dt);
  const double mu_s = drift.value(market.rate);
  const double rho_perp = std::sqrt(std::max(0.0, 1.0 - mg.rho * mg.rho));

  Eigen::VectorXd draws(2 * n);
  for (Eigen::Index k = 0; k < 2 * n; ++k) draws(k) = z();

  SdePath path;
  path.s_values.resize(n + 1);
  path.v_values.resize(n + 1);
  double v = mg.variance();
  double log_s = std::log(market.spot);
  path.s_values(0) = market.spot;
  path.v_values(0) = v;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double z1 = draws(n + k);
    const double z2 = mg.rho * z1 + rho_perp * draws(k);
    if (v < 0.0) ++path.truncations;
    const double vp = std::max(v, 0.0);
    log_s += (mu_s - 0.5 * vp) * dt + std::sqrt(vp) * sq_dt * z1;
    v += (mg.lambda + mg.mu * vp) * dt + mg.xi * std::pow(vp, mg.alpha) * sq_dt * z2;
    path.s_values(k + 1) = std::exp(log_s);
    path.v_values(k + 1) = std::max(v, 0.0);
  }
  return path;
}

std::vector<SdePath> simulate(const MGParams& mg, const MarketParams& market, const GridSpec& grid,
                              const MCSpec& mc, const SpotDrift& drift) {
  validate_oracle(market, mg);
  validate_mc(mc);
  require_same_horizon(market, grid);
  std::vector<SdePath> out(mc.n_paths);
  parallel_for(mc.n_paths, [&](std::size_t p) {
    NormalStream z = path_stream(mc, p);
    out[p] = simulate_path(mg, market, grid, z, drift);
  });
  return out;
}

namespace {

template <class PathValue>
OracleEstimate run_oracle(const MarketParams& market, const MGParams& mg, const GridSpec& grid, const MCSpec& mc,
                          const SpotDrift& drift, PathValue&& value) {
  validate_oracle(market, mg);
  validate_mc(mc);
  require_same_horizon(market, grid);
  std::vector<double> f(mc.n_paths);
  std::vector<double> trunc(mc.n_paths);
  parallel_for(mc.n_paths, [&](std::size_t p) {
    NormalStream z = path_stream(mc, p);
    const SdePath path = simulate_path(mg, market, grid, z, drift);
    f[p] = value(path);
    trunc[p] = static_cast<double>(path.truncations);
  });
  const std::vector<double> w(mc.n_paths, 1.0);
  OracleEstimate out;
  static_cast<PriceEstimate&>(out) = summarize(f, w, mc.antithetic);
  out.truncation_rate = pairwise_sum(trunc) / (static_cast<double>(mc.n_paths) * static_cast<double>(grid.n_steps()));
  return out;
}

}  // namespace

OracleEstimate price_oracle(const MarketParams& market, const MGParams& mg, const GridSpec& grid, const MCSpec& mc,
                            const SpotDrift& drift) {
  const double disc = std::exp(-market.rate * market.tau);
  return run_oracle(market, mg, grid, mc, drift, [&](const SdePath& path) {
    return disc * std::max(path.s_values(path.s_values.size() - 1) - market.strike, 0.0);
  });
}

OracleEstimate hull_white_mixing_price(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                                       const MCSpec& mc) {
  if (mg.rho != 0.0) throw DomainError("rho", "mixing estimator requires rho = 0");
  const auto n = static_cast<Eigen::Index>(grid.n_steps());
  return run_oracle(market, mg, grid, mc, SpotDrift{}, [&](const SdePath& path) {
    const double avg = path.v_values.head(n).sum() / static_cast<double>(n);
    return bs_call_value(market.spot, market.strike, market.rate, avg, market.tau);
  });
}

}  // namespace mgpath
