#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "d2dcache/cachedist.hpp"
#include "d2dcache/geometry.hpp"
#include "d2dcache/harmonic.hpp"
#include "d2dcache/random.hpp"

namespace d2dcache {

// One sampled (placement, requests) pair under the cluster TDMA policy.
// Served users of a cluster with W potential links each get 1/(K W) of C:
// the cluster is active one slot in K and round-robins over its W links.
struct RealizationOutcome {
  std::vector<std::uint8_t> served;
  std::vector<double> rate_share;
  std::vector<int> w_per_cluster;

  [[nodiscard]] int good_clusters() const;
  [[nodiscard]] double outage_fraction() const;
  [[nodiscard]] double mean_rate_share() const;
};

struct TradeoffPoint {
  int g_c = 0;
  double p_out = 1.0;
  double t_min_norm = 0.0;
  double t_mean_norm = 0.0;
  long long realizations = 0;
  double std_err_p = 0.0;
  double std_err_t = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const TradeoffPoint&, const TradeoffPoint&) = default;
};

struct SimulationOptions {
  bool exclude_self = true;
  // 0 = D2DCACHE_WORKERS env var if set, else hardware concurrency.
  int workers = 0;
};

int resolve_workers(int requested);

// Same-cluster nodes caching the file requested by each user (ascending ids).
std::vector<std::vector<int>> potential_links(const CachePlacement& placement,
                                              std::span<const int> requests,
                                              const ClusterLayout& layout, bool exclude_self);

// Deterministic accounting for a given placement and request vector.
RealizationOutcome evaluate_realization(const CachePlacement& placement,
                                        std::span<const int> requests,
                                        const ClusterLayout& layout, bool exclude_self);

// Draws the placement (n*M entries) and then the n requests from rng.
RealizationOutcome run_realization(const NetworkConfig& config, const ClusterLayout& layout,
                                   const CacheDistribution& dist, const ZipfDemand& demand,
                                   Engine& rng, bool exclude_self = true);

// Realization k uses make_engine(seed, k); results are reduced in index order
// with a chunking that depends only on `realizations`, so the point is
// bit-identical for any worker count.
TradeoffPoint estimate_tradeoff_point(const NetworkConfig& config, const ClusterLayout& layout,
                                      const CacheDistribution& dist, const ZipfDemand& demand,
                                      long long realizations, std::uint64_t seed,
                                      const SimulationOptions& options = {});

// Distribution used for cluster size g_c: the water-filling optimum when
// defined, otherwise most_popular_distribution.
CacheDistribution cluster_cache_distribution(const ZipfDemand& demand, int M, int g_c);

struct SweepResult {
  std::vector<TradeoffPoint> points;
  std::vector<std::string> warnings;  // one per skipped g_c
};

// One point per feasible g_c, in the given order, each with its own cache
// distribution and the same seed. K = 0 selects reuse_factor(delta).
SweepResult sweep_cluster_sizes(const NetworkConfig& config, const ZipfDemand& demand,
                                std::span<const int> g_c_list, long long realizations,
                                std::uint64_t seed, int K = 0,
                                const SimulationOptions& options = {});

// One active link per cluster of the slot's color that has W > 0: a served
// user chosen uniformly, fed by its nearest holder (ties to the lowest id).
std::vector<Link> schedule_slot(const ClusterLayout& layout,
                                const std::vector<std::vector<int>>& candidates, int slot,
                                Engine& rng);

struct ProtocolCheckReport {
  long long slots = 0;
  long long links = 0;
  long long violations = 0;
  std::vector<Violation> examples;  // first few, for diagnostics
};

// Samples `slots` independent realizations, schedules slot t (color t mod K)
// on each and runs the protocol-model checker.
ProtocolCheckReport check_protocol_model(const NetworkConfig& config, const ClusterLayout& layout,
                                         const CacheDistribution& dist, const ZipfDemand& demand,
                                         long long slots, std::uint64_t seed,
                                         bool exclude_self = true);

}  // namespace d2dcache
