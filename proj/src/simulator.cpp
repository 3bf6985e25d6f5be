#include "d2dcache/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "d2dcache/errors.hpp"

namespace d2dcache {

namespace {

// Distinct same-cluster nodes holding each file; own-cache copies are
// subtracted per user when exclude_self is set.
class ClusterCounter {
 public:
  explicit ClusterCounter(int m) : count_(static_cast<std::size_t>(m) + 1, 0) {}

  void load(const CachePlacement& placement, std::span<const int> members) {
    for (int v : members) {
      const auto files = placement.node(v);
      for (std::size_t i = 0; i < files.size(); ++i) {
        const int f = files[i];
        if (std::find(files.begin(), files.begin() + static_cast<std::ptrdiff_t>(i), f) !=
            files.begin() + static_cast<std::ptrdiff_t>(i)) {
          continue;
        }
        if (count_[static_cast<std::size_t>(f)]++ == 0) touched_.push_back(f);
      }
    }
  }

  [[nodiscard]] int holders(int f) const { return count_.at(static_cast<std::size_t>(f)); }

  void reset() {
    for (int f : touched_) count_[static_cast<std::size_t>(f)] = 0;
    touched_.clear();
  }

 private:
  std::vector<int> count_;
  std::vector<int> touched_;
};

int max_file(const CachePlacement& placement, std::span<const int> requests) {
  int m = 0;
  for (int v = 0; v < placement.n(); ++v) {
    for (int f : placement.node(v)) m = std::max(m, f);
  }
  for (int f : requests) m = std::max(m, f);
  return m;
}

void check_dimensions(const CachePlacement& placement, std::span<const int> requests,
                      const ClusterLayout& layout) {
  if (placement.n() != layout.n() || static_cast<int>(requests.size()) != layout.n()) {
    throw DomainError("placement, requests and layout disagree on the number of nodes");
  }
}

RealizationOutcome evaluate_with(const CachePlacement& placement, std::span<const int> requests,
                                 const ClusterLayout& layout, bool exclude_self,
                                 ClusterCounter& counter) {
  const int n = layout.n();
  RealizationOutcome out;
  out.served.assign(static_cast<std::size_t>(n), 0);
  out.rate_share.assign(static_cast<std::size_t>(n), 0.0);
  out.w_per_cluster.assign(static_cast<std::size_t>(layout.num_clusters()), 0);
  const double K = layout.K();
  for (int c = 0; c < layout.num_clusters(); ++c) {
    const auto members = layout.members(c);
    counter.load(placement, members);
    int w = 0;
    for (int u : members) {
      const int f = requests[static_cast<std::size_t>(u)];
      int others = counter.holders(f);
      if (exclude_self && others > 0 && placement.holds(u, f)) --others;
      if (others > 0) {
        out.served[static_cast<std::size_t>(u)] = 1;
        ++w;
      }
    }
    counter.reset();
    out.w_per_cluster[static_cast<std::size_t>(c)] = w;
    if (w == 0) continue;
    const double share = 1.0 / (K * w);
    for (int u : members) {
      if (out.served[static_cast<std::size_t>(u)]) out.rate_share[static_cast<std::size_t>(u)] = share;
    }
  }
  return out;
}

double std_error(std::span<const double> xs) {
  const auto r = static_cast<double>(xs.size());
  if (xs.size() < 2) return 0.0;
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / r;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (r - 1.0) / r);
}

}  // namespace

int RealizationOutcome::good_clusters() const {
  return static_cast<int>(std::count_if(w_per_cluster.begin(), w_per_cluster.end(),
                                        [](int w) { return w > 0; }));
}

double RealizationOutcome::outage_fraction() const {
  if (served.empty()) return 1.0;
  const auto hits = std::count(served.begin(), served.end(), std::uint8_t{1});
  return 1.0 - static_cast<double>(hits) / static_cast<double>(served.size());
}

double RealizationOutcome::mean_rate_share() const {
  if (rate_share.empty()) return 0.0;
  return std::accumulate(rate_share.begin(), rate_share.end(), 0.0) /
         static_cast<double>(rate_share.size());
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("D2DCACHE_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::vector<int>> potential_links(const CachePlacement& placement,
                                              std::span<const int> requests,
                                              const ClusterLayout& layout, bool exclude_self) {
  check_dimensions(placement, requests, layout);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(layout.n()));
  for (int c = 0; c < layout.num_clusters(); ++c) {
    const auto members = layout.members(c);
    for (int u : members) {
      const int f = requests[static_cast<std::size_t>(u)];
      auto& set = out[static_cast<std::size_t>(u)];
      for (int v : members) {
        if (exclude_self && v == u) continue;
        if (placement.holds(v, f)) set.push_back(v);
      }
    }
  }
  return out;
}

RealizationOutcome evaluate_realization(const CachePlacement& placement,
                                        std::span<const int> requests,
                                        const ClusterLayout& layout, bool exclude_self) {
  check_dimensions(placement, requests, layout);
  ClusterCounter counter(max_file(placement, requests));
  return evaluate_with(placement, requests, layout, exclude_self, counter);
}

RealizationOutcome run_realization(const NetworkConfig& config, const ClusterLayout& layout,
                                   const CacheDistribution& dist, const ZipfDemand& demand,
                                   Engine& rng, bool exclude_self) {
  if (dist.m() != demand.m()) throw DomainError("run_realization: library size mismatch");
  if (config.n != layout.n()) throw DomainError("run_realization: config.n != layout.n");
  const auto placement = sample_cache_placement(dist, config.n, config.M, rng);
  const auto requests = sample_requests(demand, config.n, rng);
  ClusterCounter counter(demand.m());
  return evaluate_with(placement, requests, layout, exclude_self, counter);
}

TradeoffPoint estimate_tradeoff_point(const NetworkConfig& config, const ClusterLayout& layout,
                                      const CacheDistribution& dist, const ZipfDemand& demand,
                                      long long realizations, std::uint64_t seed,
                                      const SimulationOptions& options) {
  if (realizations < 1) throw DomainError("estimate_tradeoff_point: realizations must be >= 1");
  if (dist.m() != demand.m()) throw DomainError("estimate_tradeoff_point: library size mismatch");
  if (config.n != layout.n()) throw DomainError("estimate_tradeoff_point: config.n != layout.n");

  const auto n = static_cast<std::size_t>(config.n);
  const auto R = static_cast<std::size_t>(realizations);
  // Chunk size depends on R only; at most 256 per-user partial sums are kept.
  const std::size_t chunk = std::max<std::size_t>(8, (R + 255) / 256);
  const std::size_t num_chunks = (R + chunk - 1) / chunk;

  std::vector<double> outage(R);
  std::vector<double> mean_share(R);
  std::vector<std::vector<double>> chunk_sums(num_chunks);
  const DiscreteSampler cache_sampler(dist.pc);

  auto run_chunk = [&](std::size_t ci, ClusterCounter& counter) {
    auto& sums = chunk_sums[ci];
    sums.assign(n, 0.0);
    const std::size_t end = std::min(R, (ci + 1) * chunk);
    for (std::size_t k = ci * chunk; k < end; ++k) {
      auto rng = make_engine(seed, k);
      const auto placement = sample_cache_placement(cache_sampler, config.n, config.M, rng);
      const auto requests = sample_requests(demand, config.n, rng);
      const auto outcome = evaluate_with(placement, requests, layout, options.exclude_self, counter);
      outage[k] = outcome.outage_fraction();
      mean_share[k] = outcome.mean_rate_share();
      for (std::size_t u = 0; u < n; ++u) sums[u] += outcome.rate_share[u];
    }
  };

  const int workers = std::min<int>(resolve_workers(options.workers), static_cast<int>(num_chunks));
  if (workers <= 1) {
    ClusterCounter counter(demand.m());
    for (std::size_t ci = 0; ci < num_chunks; ++ci) run_chunk(ci, counter);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        ClusterCounter counter(demand.m());
        for (auto ci = static_cast<std::size_t>(w); ci < num_chunks;
             ci += static_cast<std::size_t>(workers)) {
          run_chunk(ci, counter);
        }
      });
    }
  }

  std::vector<double> per_user(n, 0.0);
  for (const auto& sums : chunk_sums) {
    for (std::size_t u = 0; u < n; ++u) per_user[u] += sums[u];
  }
  const double Rd = static_cast<double>(R);
  double t_min = std::numeric_limits<double>::infinity();
  for (double s : per_user) t_min = std::min(t_min, s / Rd);

  TradeoffPoint point;
  point.g_c = layout.g_c();
  point.realizations = realizations;
  point.seed = seed;
  point.p_out = std::accumulate(outage.begin(), outage.end(), 0.0) / Rd;
  point.t_mean_norm = std::accumulate(mean_share.begin(), mean_share.end(), 0.0) / Rd;
  point.t_min_norm = std::min(t_min, point.t_mean_norm);
  point.std_err_p = std_error(outage);
  point.std_err_t = std_error(mean_share);
  return point;
}

CacheDistribution cluster_cache_distribution(const ZipfDemand& demand, int M, int g_c) {
  if (static_cast<long long>(M) * (g_c - 1) >= 2) return optimal_cache_distribution(demand, M, g_c);
  return most_popular_distribution(demand.m(), M, g_c);
}

SweepResult sweep_cluster_sizes(const NetworkConfig& config, const ZipfDemand& demand,
                                std::span<const int> g_c_list, long long realizations,
                                std::uint64_t seed, int K, const SimulationOptions& options) {
  config.validate();
  const int reuse = K > 0 ? K : reuse_factor(config.delta);
  SweepResult result;
  for (int g_c : g_c_list) {
    try {
      const ClusterLayout layout(config.n, g_c, reuse);
      const auto dist = cluster_cache_distribution(demand, config.M, g_c);
      result.points.push_back(
          estimate_tradeoff_point(config, layout, dist, demand, realizations, seed, options));
    } catch (const ConfigError& e) {
      result.warnings.push_back("skipped g_c=" + std::to_string(g_c) + ": " + e.what());
    }
  }
  return result;
}

std::vector<Link> schedule_slot(const ClusterLayout& layout,
                                const std::vector<std::vector<int>>& candidates, int slot,
                                Engine& rng) {
  const int color = slot % layout.K();
  std::vector<Link> links;
  for (int c = 0; c < layout.num_clusters(); ++c) {
    if (layout.color_of(c) != color) continue;
    std::vector<int> served;
    for (int u : layout.members(c)) {
      if (!candidates[static_cast<std::size_t>(u)].empty()) served.push_back(u);
    }
    if (served.empty()) continue;
    const auto pick = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(served.size()));
    const int rx = served[std::min(pick, served.size() - 1)];
    const Point prx = layout.position(rx);
    int tx = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int v : candidates[static_cast<std::size_t>(rx)]) {
      const double d = distance(layout.position(v), prx);
      if (d < best) {
        best = d;
        tx = v;
      }
    }
    links.push_back({tx, rx});
  }
  return links;
}

ProtocolCheckReport check_protocol_model(const NetworkConfig& config, const ClusterLayout& layout,
                                         const CacheDistribution& dist, const ZipfDemand& demand,
                                         long long slots, std::uint64_t seed, bool exclude_self) {
  ProtocolCheckReport report;
  const DiscreteSampler cache_sampler(dist.pc);
  for (long long t = 0; t < slots; ++t) {
    auto rng = make_engine(seed, static_cast<std::uint64_t>(t));
    const auto placement = sample_cache_placement(cache_sampler, config.n, config.M, rng);
    const auto requests = sample_requests(demand, config.n, rng);
    const auto candidates = potential_links(placement, requests, layout, exclude_self);
    const auto links = schedule_slot(layout, candidates, static_cast<int>(t % layout.K()), rng);
    const auto violations = verify_protocol_model(layout, links, config.delta);
    ++report.slots;
    report.links += static_cast<long long>(links.size());
    report.violations += static_cast<long long>(violations.size());
    for (const auto& v : violations) {
      if (report.examples.size() >= 5) break;
      report.examples.push_back(v);
    }
  }
  return report;
}

}  // namespace d2dcache
