#include "d2dcache/config.hpp"

#include <cmath>
#include <string>

#include "d2dcache/errors.hpp"

namespace d2dcache {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

}  // namespace

void ExperimentConfig::validate(bool geometry) const {
  if (gammas.empty()) fail("gamma", "at least one value required");
  for (double g : gammas) {
    if (!(g > 0.0 && g < 1.0)) fail("gamma", std::to_string(g) + " is outside (0, 1)");
  }
  if (m < 1) fail("m", "must be at least 1");
  if (M < 1) fail("M", "must be at least 1");
  if (!(C > 0.0) || !std::isfinite(C)) fail("C", "must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) fail("delta", "must be positive");
  if (n < 1 || exact_sqrt(n) < 0) fail("n", std::to_string(n) + " is not a perfect square");
  if (K && (*K < 1 || exact_sqrt(*K) < 0)) {
    fail("K", std::to_string(*K) + " is not a perfect square");
  }
  if (g_c.empty()) fail("g_c", "at least one value required");
  const long long side = exact_sqrt(n);
  for (int g : g_c) {
    if (!geometry) {
      if (g < 1) fail("g_c", "must be at least 1");
      continue;
    }
    const long long d = g >= 1 ? exact_sqrt(g) : -1;
    if (d < 0) fail("g_c", std::to_string(g) + " is not a perfect square");
    if (side % d != 0) {
      fail("g_c", std::to_string(g) + " does not tile a grid of n = " + std::to_string(n));
    }
  }
  if (realizations < 1) fail("realizations", "must be at least 1");
  if (workers < 0) fail("workers", "must be nonnegative");
}

NetworkConfig ExperimentConfig::network() const {
  NetworkConfig c;
  c.n = n;
  c.delta = delta;
  c.link_rate = C;
  c.M = M;
  return c;
}

int ExperimentConfig::reuse() const { return K ? *K : reuse_factor(delta); }

}  // namespace d2dcache
