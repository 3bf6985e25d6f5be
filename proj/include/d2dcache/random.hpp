#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace d2dcache {

using Engine = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based stream seed: h(seed, k) = mix64(mix64(seed) ^ mix64(k + 1)).
// Stream k does not depend on how many other streams were drawn before it.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t k) noexcept {
  return mix64(mix64(seed) ^ mix64(k + 1));
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t k) {
  return Engine{stream_seed(seed, k)};
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform,
// unlike std::uniform_real_distribution.
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF sampler over {1..size} using a cumulative table and binary search.
class DiscreteSampler {
 public:
  DiscreteSampler() = default;
  explicit DiscreteSampler(std::span<const double> pmf);

  // Returns a 1-based outcome.
  [[nodiscard]] int operator()(Engine& rng) const;

  [[nodiscard]] std::size_t size() const noexcept { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

}  // namespace d2dcache
