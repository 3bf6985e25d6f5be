#pragma once

#include <span>
#include <vector>

#include "d2dcache/harmonic.hpp"
#include "d2dcache/random.hpp"

namespace d2dcache {

// Random caching pmf shared by every node of a cluster of g_c nodes, each
// holding M files drawn with replacement.
struct CacheDistribution {
  std::vector<double> pc;  // pc[f-1], f = 1..m
  double nu = 0.0;         // water level; pc(f) = [1 - nu / z_f]^+
  int m_star = 1;          // support size: pc(f) > 0 iff f <= m_star
  int M = 1;
  int g_c = 2;

  [[nodiscard]] int m() const noexcept { return static_cast<int>(pc.size()); }
};

// z_f = P_r(f)^(1 / (M(g_c-1) - 1)); maximizes the in-cluster hit probability
// (own cache excluded). The support size is found by a linear scan over the
// two integer conditions, with z_{m+1} taken as 0.
// Throws ConfigError when M(g_c-1) < 2 (exponent undefined).
CacheDistribution optimal_cache_distribution(const ZipfDemand& demand, int M, int g_c);

// All mass on the most popular file: the optimum when M(g_c-1) == 1 (the
// objective becomes linear) and an arbitrary valid choice when it is 0.
CacheDistribution most_popular_distribution(int m, int M, int g_c);

// p_u^c = sum_f P_r(f) (1 - (1 - pc(f))^E) with E = M(g_c-1) when the user's
// own cache is excluded, E = M g_c otherwise. Powers evaluated in log domain.
double hit_probability(std::span<const double> pc, const ZipfDemand& demand, int M, int g_c,
                       bool exclude_self = true);
double hit_probability(const CacheDistribution& dist, const ZipfDemand& demand,
                       bool exclude_self = true);

// Closed form of p_u^c under the optimal distribution when its support is the
// whole library. Throws DomainError if the optimal support is smaller than m.
double hit_probability_full_support(const ZipfDemand& demand, int M, int g_c);

// Upper bound on the probability that two distinct users of one cluster both
// hit: (p_u^c)^2 + sum_f P_r(f)^2 (1 - (1 - pc(f))^(M(g_c-1))), capped at 1.
double pairwise_hit_upper_bound(std::span<const double> pc, const ZipfDemand& demand, int M,
                                int g_c);
double pairwise_hit_upper_bound(const CacheDistribution& dist, const ZipfDemand& demand);

// Paley-Zygmund lower bound on P(W > 0) for W = number of users of a cluster
// of g_c nodes that find their request in the other caches.
double paley_zygmund_lower_bound(const CacheDistribution& dist, const ZipfDemand& demand,
                                 int g_c);

// Per-node cache contents, n nodes x M slots, flat row-major.
class CachePlacement {
 public:
  CachePlacement(int n, int M) : n_(n), M_(M), files_(static_cast<std::size_t>(n) * M) {}

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int M() const noexcept { return M_; }
  [[nodiscard]] std::span<const int> node(int v) const {
    return {files_.data() + static_cast<std::size_t>(v) * M_, static_cast<std::size_t>(M_)};
  }
  [[nodiscard]] std::span<int> node(int v) {
    return {files_.data() + static_cast<std::size_t>(v) * M_, static_cast<std::size_t>(M_)};
  }
  [[nodiscard]] bool holds(int v, int f) const;

  friend bool operator==(const CachePlacement&, const CachePlacement&) = default;

 private:
  int n_;
  int M_;
  std::vector<int> files_;
};

// n*M i.i.d. draws from dist.pc, node by node.
CachePlacement sample_cache_placement(const CacheDistribution& dist, int n, int M, Engine& rng);
CachePlacement sample_cache_placement(const DiscreteSampler& sampler, int n, int M, Engine& rng);

}  // namespace d2dcache
