#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mgpath/params.hpp"
#include "mgpath/rng.hpp"
#include "mgpath/stats.hpp"

namespace mgpath {

/// Spot drift used by the simulation: r (risk neutral) or a physical phi.
struct SpotDrift {
  bool risk_neutral = true;
  double phi = 0.0;

  double value(double rate) const { return risk_neutral ? rate : phi; }
  /// Parses "rn" or "phys:<phi>".
  static SpotDrift parse(const std::string& text);
};

struct SdePath {
  Eigen::VectorXd s_values;
  Eigen::VectorXd v_values;  // truncated at 0
  std::size_t truncations = 0;
};

/// One Euler path: full truncation in V, log-Euler in S. Draws 0..n-1 are the
/// independent vol noise Z2', draws n..2n-1 are Z1, Z2 = rho Z1 + sqrt(1-rho^2) Z2'.
SdePath simulate_path(const MGParams& mg, const MarketParams& market, const GridSpec& grid, NormalStream& z,
                      const SpotDrift& drift = {});

std::vector<SdePath> simulate(const MGParams& mg, const MarketParams& market, const GridSpec& grid,
                              const MCSpec& mc, const SpotDrift& drift = {});

struct OracleEstimate : PriceEstimate {
  double truncation_rate = 0.0;  // fraction of steps that saw V < 0
};

/// e^{-r tau} mean[(S_T - K)^+].
OracleEstimate price_oracle(const MarketParams& market, const MGParams& mg, const GridSpec& grid, const MCSpec& mc,
                            const SpotDrift& drift = {});

/// Mean of BS(sigma_bar^2) with sigma_bar^2 = (1/tau) sum V+ dt. Requires rho = 0.
OracleEstimate hull_white_mixing_price(const MarketParams& market, const MGParams& mg, const GridSpec& grid,
                                       const MCSpec& mc);

/// Parameter check for the oracle: like validate_mg but xi = 0 is allowed.
void validate_oracle(const MarketParams& market, const MGParams& mg);

}  // namespace mgpath
