#include "d2dcache/random.hpp"

#include <algorithm>

#include "d2dcache/errors.hpp"

namespace d2dcache {

DiscreteSampler::DiscreteSampler(std::span<const double> pmf) {
  if (pmf.empty()) throw DomainError("DiscreteSampler: empty pmf");
  cdf_.resize(pmf.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (!(pmf[i] >= 0.0)) throw DomainError("DiscreteSampler: negative probability");
    acc += pmf[i];
    cdf_[i] = acc;
  }
  if (!(acc > 0.0)) throw DomainError("DiscreteSampler: pmf has zero mass");
  for (auto& c : cdf_) c /= acc;
  // Pin the tail so that u < 1 always lands inside the support; trailing
  // zero-mass entries share the last value and are never selected.
  const auto last_positive = static_cast<std::size_t>(
      std::distance(pmf.begin(), std::find_if(pmf.rbegin(), pmf.rend(),
                                              [](double p) { return p > 0.0; })
                                     .base()) -
      1);
  for (std::size_t i = last_positive; i < cdf_.size(); ++i) cdf_[i] = 1.0;
}

int DiscreteSampler::operator()(Engine& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<int>(std::distance(cdf_.begin(), it)) + 1;
}

}  // namespace d2dcache
