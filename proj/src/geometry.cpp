#include "d2dcache/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "d2dcache/errors.hpp"

namespace d2dcache {

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

long long exact_sqrt(long long v) noexcept {
  if (v < 0) return -1;
  auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(v))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v ? r : -1;
}

void NetworkConfig::validate() const {
  if (n < 1 || exact_sqrt(n) < 0) {
    throw ConfigError("n: must be a positive perfect square, got " + std::to_string(n));
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ConfigError("delta: must be > 0, got " + std::to_string(delta));
  }
  if (!(link_rate > 0.0) || !std::isfinite(link_rate)) {
    throw ConfigError("C: link rate must be > 0, got " + std::to_string(link_rate));
  }
  if (M < 1) throw ConfigError("M: cache size must be >= 1, got " + std::to_string(M));
}

std::vector<Point> build_grid(int n) {
  const long long side = exact_sqrt(n);
  if (n < 1 || side < 0) {
    throw ConfigError("n: must be a positive perfect square, got " + std::to_string(n));
  }
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double s = static_cast<double>(side);
  for (long long row = 0; row < side; ++row) {
    for (long long col = 0; col < side; ++col) {
      pts.push_back({(static_cast<double>(col) + 0.5) / s, (static_cast<double>(row) + 0.5) / s});
    }
  }
  return pts;
}

std::vector<int> feasible_cluster_sizes(int n) {
  const long long side = exact_sqrt(n);
  std::vector<int> out;
  if (side <= 0) return out;
  for (long long d = 1; d <= side; ++d) {
    if (side % d == 0) out.push_back(static_cast<int>(d * d));
  }
  return out;
}

ClusterLayout::ClusterLayout(int n, int g_c, int K) : n_(n), g_c_(g_c), K_(K) {
  const long long side = exact_sqrt(n);
  if (n < 1 || side < 0) {
    throw ConfigError("n: must be a positive perfect square, got " + std::to_string(n));
  }
  const long long cside = exact_sqrt(g_c);
  if (g_c < 1 || cside < 0 || side % cside != 0) {
    const auto feasible = feasible_cluster_sizes(n);
    int below = 0;
    int above = 0;
    for (int f : feasible) {
      if (f <= g_c) below = f;
      if (f >= g_c && above == 0) above = f;
    }
    std::ostringstream msg;
    msg << "g_c: " << g_c << " does not tile a " << side << "x" << side
        << " grid (needs a perfect square whose root divides " << side << ")";
    msg << "; nearest feasible:";
    if (below > 0) msg << " " << below;
    if (above > 0 && above != below) msg << " " << above;
    throw ConfigError(msg.str());
  }
  const long long ksq = exact_sqrt(K);
  if (K < 1 || ksq < 0) {
    throw ConfigError("K: reuse factor must be a positive perfect square, got " + std::to_string(K));
  }
  side_ = static_cast<int>(side);
  cluster_side_ = static_cast<int>(cside);
  clusters_per_side_ = side_ / cluster_side_;
  side_len_ = static_cast<double>(cluster_side_) / static_cast<double>(side_);
  range_ = std::sqrt(2.0) * side_len_;
  positions_ = build_grid(n);

  const int period = static_cast<int>(ksq);
  cluster_of_.resize(static_cast<std::size_t>(n));
  for (int row = 0; row < side_; ++row) {
    for (int col = 0; col < side_; ++col) {
      cluster_of_[static_cast<std::size_t>(row * side_ + col)] =
          (row / cluster_side_) * clusters_per_side_ + col / cluster_side_;
    }
  }
  color_of_.resize(static_cast<std::size_t>(num_clusters()));
  for (int cr = 0; cr < clusters_per_side_; ++cr) {
    for (int cc = 0; cc < clusters_per_side_; ++cc) {
      color_of_[static_cast<std::size_t>(cr * clusters_per_side_ + cc)] =
          (cr % period) * period + cc % period;
    }
  }
  members_.resize(static_cast<std::size_t>(n));
  std::vector<int> fill(static_cast<std::size_t>(num_clusters()), 0);
  for (int v = 0; v < n; ++v) {
    const int c = cluster_of_[static_cast<std::size_t>(v)];
    members_[static_cast<std::size_t>(c) * g_c + fill[static_cast<std::size_t>(c)]++] = v;
  }
}

std::span<const int> ClusterLayout::members(int cluster) const {
  if (cluster < 0 || cluster >= num_clusters()) throw DomainError("members: bad cluster id");
  return {members_.data() + static_cast<std::size_t>(cluster) * g_c_, static_cast<std::size_t>(g_c_)};
}

ClusterLayout build_clusters(int n, int g_c, int K) { return ClusterLayout(n, g_c, K); }

int reuse_factor(double delta) {
  if (!(delta > 0.0)) throw DomainError("reuse_factor: delta must be > 0");
  const int side = static_cast<int>(std::ceil(std::sqrt(2.0) * (1.0 + delta))) + 1;
  return side * side;
}

std::vector<std::vector<int>> active_cluster_sets(const ClusterLayout& layout) {
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(layout.K()));
  for (int c = 0; c < layout.num_clusters(); ++c) {
    sets[static_cast<std::size_t>(layout.color_of(c))].push_back(c);
  }
  return sets;
}

std::string Violation::describe() const {
  std::ostringstream os;
  if (kind == Kind::OutOfRange) {
    os << "out-of-range link " << link.tx << "->" << link.rx << ": d=" << distance
       << " > R=" << threshold;
  } else {
    os << "interference at rx " << link.rx << " (link " << link.tx << "->" << link.rx
       << ") from tx " << interferer << ": d=" << distance << " < (1+delta)R=" << threshold;
  }
  return os.str();
}

std::vector<Violation> verify_protocol_model(const ClusterLayout& layout,
                                             std::span<const Link> links, double delta) {
  const double R = layout.range();
  const double guard = (1.0 + delta) * R;
  const double slack = 1e-12;
  std::vector<Violation> out;
  for (const auto& link : links) {
    if (link.tx < 0 || link.tx >= layout.n() || link.rx < 0 || link.rx >= layout.n()) {
      throw DomainError("verify_protocol_model: link references an invalid node");
    }
  }
  for (const auto& link : links) {
    const Point rx = layout.position(link.rx);
    const double d = distance(layout.position(link.tx), rx);
    if (d > R + slack) out.push_back({Violation::Kind::OutOfRange, link, -1, d, R});
    for (const auto& other : links) {
      if (other.tx == link.tx) continue;
      const double di = distance(layout.position(other.tx), rx);
      if (di < guard - slack) {
        out.push_back({Violation::Kind::Interference, link, other.tx, di, guard});
      }
    }
  }
  return out;
}

}  // namespace d2dcache
