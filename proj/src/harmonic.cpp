#include "d2dcache/harmonic.hpp"

#include <cmath>
#include <string>

#include "d2dcache/errors.hpp"

namespace d2dcache {

namespace {

void check_range(long long x, long long y) {
  if (x < 1) throw DomainError("harmonic: x must be >= 1, got " + std::to_string(x));
  if (x > y) {
    throw DomainError("harmonic: requires x <= y, got x=" + std::to_string(x) +
                      " y=" + std::to_string(y));
  }
}

}  // namespace

double harmonic_sum(double gamma, long long x, long long y) {
  check_range(x, y);
  double sum = 0.0;
  if (gamma == 0.0) return static_cast<double>(y - x + 1);
  for (long long i = x; i <= y; ++i) sum += std::pow(static_cast<double>(i), -gamma);
  return sum;
}

HarmonicBounds harmonic_bounds(double gamma, long long x, long long y) {
  check_range(x, y);
  const auto xd = static_cast<double>(x);
  const auto yd = static_cast<double>(y);
  if (gamma == 1.0) {
    return {std::log(yd + 1.0) - std::log(xd), std::log(yd) - std::log(xd) + 1.0 / xd};
  }
  const double e = 1.0 - gamma;
  return {(std::pow(yd + 1.0, e) - std::pow(xd, e)) / e,
          (std::pow(yd, e) - std::pow(xd, e)) / e + std::pow(xd, -gamma)};
}

ZipfDemand::ZipfDemand(double gamma, int m) : gamma_(gamma) {
  if (m < 1) throw DomainError("ZipfDemand: m must be >= 1, got " + std::to_string(m));
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw DomainError("ZipfDemand: gamma must be finite and >= 0");
  }
  norm_ = harmonic_sum(gamma, 1, m);
  pmf_.resize(static_cast<std::size_t>(m));
  for (int f = 1; f <= m; ++f) {
    pmf_[static_cast<std::size_t>(f - 1)] = std::pow(static_cast<double>(f), -gamma) / norm_;
  }
  sampler_ = DiscreteSampler(pmf_);
}

ZipfDemand zipf_pmf(double gamma, int m) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("zipf_pmf: gamma must lie in (0,1), got " + std::to_string(gamma));
  }
  return ZipfDemand(gamma, m);
}

std::vector<int> sample_requests(const ZipfDemand& demand, int n, Engine& rng) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (auto& f : out) f = demand.sampler()(rng);
  return out;
}

}  // namespace d2dcache
