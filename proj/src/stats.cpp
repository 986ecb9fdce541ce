#include "mgpath/stats.hpp"

#include <algorithm>
#include <limits>

namespace mgpath {

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 16) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

MeanError mean_and_error(std::span<const double> x) {
  const auto n = static_cast<double>(x.size());
  if (x.empty()) return {};
  const double mean = pairwise_sum(x) / n;
  if (x.size() < 2) return {mean, 0.0};
  std::vector<double> dev(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dev[i] = (x[i] - mean) * (x[i] - mean);
  const double var = pairwise_sum(dev) / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

PriceEstimate summarize(std::span<const double> f, std::span<const double> w, bool paired) {
  PriceEstimate out;
  out.n_paths = f.size();
  if (paired) {
    std::vector<double> pairs(f.size() / 2);
    for (std::size_t k = 0; k < pairs.size(); ++k) pairs[k] = 0.5 * (f[2 * k] + f[2 * k + 1]);
    const auto me = mean_and_error(pairs);
    out.price = me.mean;
    out.stderr = me.stderr;
  } else {
    const auto me = mean_and_error(f);
    out.price = me.mean;
    out.stderr = me.stderr;
  }
  std::vector<double> w2(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) w2[i] = w[i] * w[i];
  const double sw = pairwise_sum(w);
  const double sw2 = pairwise_sum(w2);
  out.effective_sample_size = sw2 > 0.0 ? std::min(sw * sw / sw2, static_cast<double>(w.size())) : 0.0;
  return out;
}

double z_score(double a, double se_a, double b, double se_b) {
  const double diff = std::abs(a - b);
  const double se = std::sqrt(se_a * se_a + se_b * se_b);
  if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / se;
}

}  // namespace mgpath
