#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "mgpath/params.hpp"

namespace mgpath {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent seed from a base seed and a tag (method name hash,
/// experiment id, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

/// Standard-normal draws for one Monte Carlo path. The stream is a pure
/// function of (seed, stream index), so results do not depend on which worker
/// evaluates the path or in which order.
///
/// Draw layout shared by every pricer: draws 0..n-1 drive the volatility noise
/// of calendar steps 0..n-1, draws n..2n-1 drive the spot noise.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream_index, double sign = 1.0)
      : engine_(splitmix64(seed) ^ splitmix64(stream_index * 0xd1b54a32d192ed03ULL + 1)),
        sign_(sign) {}

  double operator()() { return sign_ * normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  double sign_;
};

/// Stream for `path` under `mc`: with antithetic sampling odd paths replay the
/// draws of their even partner with flipped sign.
inline NormalStream path_stream(const MCSpec& mc, std::size_t path) {
  if (mc.antithetic) {
    return NormalStream(mc.seed, path & ~std::size_t{1}, (path & 1U) ? -1.0 : 1.0);
  }
  return NormalStream(mc.seed, path);
}

}  // namespace mgpath
