#include "mgpath/params.hpp"

#include <string>

namespace mgpath {

namespace {

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) throw DomainError(field, "must be finite");
}

}  // namespace

GridSpec::GridSpec(double tau, std::size_t n_steps) : tau_(tau), n_steps_(n_steps) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau", "must be > 0");
  if (n_steps < 1) throw DomainError("n_steps", "must be >= 1");
  dt_ = tau / static_cast<double>(n_steps);
}

void validate_market(const MarketParams& market) {
  require_finite(market.spot, "spot");
  require_finite(market.strike, "strike");
  require_finite(market.rate, "rate");
  require_finite(market.tau, "tau");
  if (!(market.spot > 0.0)) throw DomainError("spot", "must be > 0");
  if (!(market.strike > 0.0)) throw DomainError("strike", "must be > 0");
  if (!(market.rate >= 0.0)) throw DomainError("rate", "must be >= 0");
  if (!(market.tau > 0.0)) throw DomainError("tau", "must be > 0");
}

void validate_mg(const MGParams& mg) {
  require_finite(mg.lambda, "lambda");
  require_finite(mg.mu, "mu");
  require_finite(mg.xi, "xi");
  require_finite(mg.alpha, "alpha");
  require_finite(mg.rho, "rho");
  require_finite(mg.y, "y");
  if (!(mg.xi > 0.0)) throw DomainError("xi", "must be > 0");
  if (!(std::abs(mg.rho) <= 1.0)) throw DomainError("rho", "must lie in [-1, 1]");
}

void validate_mc(const MCSpec& mc) {
  if (mc.n_paths < 1) throw DomainError("n_paths", "must be >= 1");
  if (mc.antithetic && mc.n_paths % 2 != 0)
    throw DomainError("n_paths", "must be even when antithetic sampling is on");
}

ValidatedParams validate(const MarketParams& market, const MGParams& mg) {
  validate_market(market);
  validate_mg(mg);
  return {market, mg};
}

void require_same_horizon(const MarketParams& market, const GridSpec& grid) {
  if (market.tau != grid.tau()) throw DomainError("tau", "grid horizon differs from the contract horizon");
}

void require_strict_correlation(const MGParams& mg) {
  if (!(std::abs(mg.rho) < 1.0))
    throw DomainError("rho", "|rho| = 1 makes the conditional log-price law degenerate");
}

}  // namespace mgpath
