#pragma once

#include <span>
#include <vector>

#include "d2dcache/random.hpp"

namespace d2dcache {

/// Generalized harmonic sum H(gamma, x, y) = sum_{i=x}^{y} i^-gamma, summed in
/// ascending i. Throws DomainError when x < 1 or x > y.
double harmonic_sum(double gamma, long long x, long long y);

struct HarmonicBounds {
  double lower;
  double upper;
};

/// Integral bounds bracketing harmonic_sum(gamma, x, y): the power form for
/// gamma != 1 and the logarithmic form for gamma == 1.
HarmonicBounds harmonic_bounds(double gamma, long long x, long long y);

/// Zipf request distribution over files {1..m}: pmf(f) = f^-gamma / H(gamma,1,m).
/// Immutable; safe to share between threads.
class ZipfDemand {
 public:
  ZipfDemand(double gamma, int m);

  [[nodiscard]] double gamma() const noexcept { return gamma_; }
  [[nodiscard]] int m() const noexcept { return static_cast<int>(pmf_.size()); }
  [[nodiscard]] double norm() const noexcept { return norm_; }
  /// 1-based file id.
  [[nodiscard]] double pmf(int f) const { return pmf_.at(static_cast<std::size_t>(f - 1)); }
  [[nodiscard]] std::span<const double> pmf() const noexcept { return pmf_; }
  [[nodiscard]] const DiscreteSampler& sampler() const noexcept { return sampler_; }

 private:
  double gamma_;
  double norm_;
  std::vector<double> pmf_;
  DiscreteSampler sampler_;
};

/// Zipf demand with exponent gamma in (0,1); DomainError outside that range.
ZipfDemand zipf_pmf(double gamma, int m);

/// n i.i.d. 1-based file requests.
std::vector<int> sample_requests(const ZipfDemand& demand, int n, Engine& rng);

}  // namespace d2dcache
