#include "d2dcache/cachedist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "d2dcache/errors.hpp"

namespace d2dcache {

namespace {

// 1 - (1 - p)^e, accurate when the power is close to 1.
double one_minus_pow(double p, long long e) {
  if (e == 0) return 0.0;
  if (p >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(e) * std::log1p(-p));
}

void check_same_library(std::span<const double> pc, const ZipfDemand& demand) {
  if (static_cast<int>(pc.size()) != demand.m()) {
    throw DomainError("cache distribution has " + std::to_string(pc.size()) +
                      " files but demand has " + std::to_string(demand.m()));
  }
}

}  // namespace

CacheDistribution optimal_cache_distribution(const ZipfDemand& demand, int M, int g_c) {
  if (M < 1) throw ConfigError("optimal_cache_distribution: M must be >= 1");
  if (g_c < 2) throw ConfigError("optimal_cache_distribution: g_c must be >= 2");
  const long long E = static_cast<long long>(M) * (g_c - 1);
  if (E - 1 < 1) {
    throw ConfigError("optimal_cache_distribution: M(g_c-1) = " + std::to_string(E) +
                      " leaves the water-filling exponent undefined (need >= 2)");
  }
  const int m = demand.m();
  const double inv = 1.0 / static_cast<double>(E - 1);

  // z_f in log domain; the scan only needs ratios z_{k+1}/z_f and z_k/z_f.
  std::vector<double> z(static_cast<std::size_t>(m) + 1, 0.0);
  for (int f = 1; f <= m; ++f) z[f - 1] = std::exp(std::log(demand.pmf(f)) * inv);

  int m_star = 0;
  double inv_sum = 0.0;
  double sum_at_star = 0.0;
  for (int k = 1; k <= m; ++k) {
    inv_sum += 1.0 / z[k - 1];
    const double kd = k;
    const bool lower_ok = kd >= 1.0 + z[k] * inv_sum;  // nu >= z_{k+1}
    const bool upper_ok = kd <= 1.0 + z[k - 1] * inv_sum;  // nu <= z_k
    if (lower_ok && upper_ok) {
      m_star = k;
      sum_at_star = inv_sum;
      break;
    }
  }
  if (m_star == 0) throw NumericalError("optimal_cache_distribution: no support size found");

  CacheDistribution dist;
  dist.M = M;
  dist.g_c = g_c;
  dist.m_star = m_star;
  dist.nu = (m_star - 1) / sum_at_star;
  dist.pc.assign(static_cast<std::size_t>(m), 0.0);
  for (int f = 1; f <= m_star; ++f) dist.pc[f - 1] = std::max(0.0, 1.0 - dist.nu / z[f - 1]);
  return dist;
}

CacheDistribution most_popular_distribution(int m, int M, int g_c) {
  if (m < 1) throw DomainError("most_popular_distribution: m must be >= 1");
  CacheDistribution dist;
  dist.pc.assign(static_cast<std::size_t>(m), 0.0);
  dist.pc[0] = 1.0;
  dist.nu = 0.0;
  dist.m_star = 1;
  dist.M = M;
  dist.g_c = g_c;
  return dist;
}

double hit_probability(std::span<const double> pc, const ZipfDemand& demand, int M, int g_c,
                       bool exclude_self) {
  check_same_library(pc, demand);
  const long long E = static_cast<long long>(M) * (exclude_self ? g_c - 1 : g_c);
  double sum = 0.0;
  for (int f = 1; f <= demand.m(); ++f) sum += demand.pmf(f) * one_minus_pow(pc[f - 1], E);
  return std::clamp(sum, 0.0, 1.0);
}

double hit_probability(const CacheDistribution& dist, const ZipfDemand& demand,
                       bool exclude_self) {
  return hit_probability(dist.pc, demand, dist.M, dist.g_c, exclude_self);
}

double hit_probability_full_support(const ZipfDemand& demand, int M, int g_c) {
  const auto dist = optimal_cache_distribution(demand, M, g_c);
  const int m = demand.m();
  if (dist.m_star != m) {
    throw DomainError("hit_probability_full_support: optimal support is " +
                      std::to_string(dist.m_star) + " < m = " + std::to_string(m));
  }
  if (m == 1) return 1.0;
  const double E = static_cast<double>(M) * (g_c - 1);
  const double a = demand.gamma() / (E - 1.0);
  double s = 0.0;
  for (int f = 1; f <= m; ++f) s += std::pow(static_cast<double>(f), a);
  const double log_miss = E * std::log(m - 1.0) - std::log(demand.norm()) - (E - 1.0) * std::log(s);
  const double miss = std::exp(log_miss);
  if (!std::isfinite(miss)) throw NumericalError("hit_probability_full_support: non-finite result");
  return 1.0 - miss;
}

double pairwise_hit_upper_bound(std::span<const double> pc, const ZipfDemand& demand, int M,
                                int g_c) {
  const double pu = hit_probability(pc, demand, M, g_c, true);
  const long long E = static_cast<long long>(M) * (g_c - 1);
  double second = 0.0;
  for (int f = 1; f <= demand.m(); ++f) {
    const double pr = demand.pmf(f);
    second += pr * pr * one_minus_pow(pc[f - 1], E);
  }
  return std::min(1.0, pu * pu + second);
}

double pairwise_hit_upper_bound(const CacheDistribution& dist, const ZipfDemand& demand) {
  return pairwise_hit_upper_bound(dist.pc, demand, dist.M, dist.g_c);
}

double paley_zygmund_lower_bound(const CacheDistribution& dist, const ZipfDemand& demand,
                                 int g_c) {
  if (g_c < 1) throw DomainError("paley_zygmund_lower_bound: g_c must be >= 1");
  const double pu = hit_probability(dist.pc, demand, dist.M, g_c, true);
  if (pu <= 0.0) return 0.0;
  const double puu = pairwise_hit_upper_bound(dist.pc, demand, dist.M, g_c);
  const double g = g_c;
  const double mean = g * pu;
  const double second_moment = g * pu + g * (g - 1.0) * puu;
  return std::clamp(mean * mean / second_moment, 0.0, 1.0);
}

bool CachePlacement::holds(int v, int f) const {
  const auto files = node(v);
  return std::find(files.begin(), files.end(), f) != files.end();
}

CachePlacement sample_cache_placement(const DiscreteSampler& sampler, int n, int M, Engine& rng) {
  CachePlacement placement(n, M);
  for (int v = 0; v < n; ++v) {
    for (auto& f : placement.node(v)) f = sampler(rng);
  }
  return placement;
}

CachePlacement sample_cache_placement(const CacheDistribution& dist, int n, int M, Engine& rng) {
  return sample_cache_placement(DiscreteSampler(dist.pc), n, M, rng);
}

}  // namespace d2dcache
