#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "d2dcache/geometry.hpp"

namespace d2dcache {

// Flat experiment description; defaults are the m=1000, n=10000, M=1, K=4
// figure setup except for K, which defaults to the protocol-safe reuse factor.
struct ExperimentConfig {
  std::vector<double> gammas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  int m = 1000;
  int n = 10000;
  int M = 1;
  double delta = 0.5;
  double C = 1.0;
  std::optional<int> K;
  std::vector<int> g_c{4, 16, 25, 100, 400, 625, 2500};
  long long realizations = 200;
  std::uint64_t seed = 1;
  bool exclude_self = true;
  int workers = 0;
  std::string output;  // empty: stdout

  // Throws ConfigError whose message starts with the offending field name.
  // Without geometry only g_c >= 1 is required of the cluster sizes.
  void validate(bool geometry = true) const;

  [[nodiscard]] NetworkConfig network() const;
  // K override, else reuse_factor(delta).
  [[nodiscard]] int reuse() const;
};

}  // namespace d2dcache
