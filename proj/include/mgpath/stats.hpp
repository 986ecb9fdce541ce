#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace mgpath {

/// Pairwise summation in index order; the result depends only on the data.
double pairwise_sum(std::span<const double> x);

struct PriceEstimate {
  double price = 0.0;
  double stderr = 0.0;
  std::size_t n_paths = 0;
  double effective_sample_size = 0.0;
};

/// Sample mean and standard error of per-path values `f`; `w` are the
/// importance weights behind them (used only for the effective sample size).
/// With `paired`, consecutive values are averaged first (antithetic pairs) and
/// the standard error is taken over pair means.
PriceEstimate summarize(std::span<const double> f, std::span<const double> w, bool paired);

/// Mean and standard error of a plain sample.
struct MeanError {
  double mean = 0.0;
  double stderr = 0.0;
};
MeanError mean_and_error(std::span<const double> x);

/// |a - b| / sqrt(se_a^2 + se_b^2); infinite when both errors vanish and the
/// values differ, zero when they agree exactly.
double z_score(double a, double se_a, double b, double se_b);

}  // namespace mgpath
