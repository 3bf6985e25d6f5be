#pragma once

#include <span>
#include <string>
#include <vector>

namespace d2dcache {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b) noexcept;

// Returns r with r*r == v, or -1 when v is not a perfect square.
long long exact_sqrt(long long v) noexcept;

struct NetworkConfig {
  int n = 10000;          // nodes, perfect square
  double delta = 0.5;     // protocol-model guard factor
  double link_rate = 1.0; // C, bits per slot
  int M = 1;              // files per cache

  void validate() const;  // throws ConfigError naming the field
};

// sqrt(n) x sqrt(n) lattice with spacing 1/sqrt(n); node id = row * side + col,
// node (col,row) at ((col+0.5)/side, (row+0.5)/side).
std::vector<Point> build_grid(int n);

// Partition of the grid into square blocks of sqrt(g_c) x sqrt(g_c) nodes,
// colored for TDMA spatial reuse with period sqrt(K) along both axes.
class ClusterLayout {
 public:
  ClusterLayout(int n, int g_c, int K);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int g_c() const noexcept { return g_c_; }
  [[nodiscard]] int K() const noexcept { return K_; }
  [[nodiscard]] int nodes_per_side() const noexcept { return side_; }
  [[nodiscard]] int clusters_per_side() const noexcept { return clusters_per_side_; }
  [[nodiscard]] int num_clusters() const noexcept { return clusters_per_side_ * clusters_per_side_; }
  [[nodiscard]] double side_len() const noexcept { return side_len_; }
  // Cluster diagonal: every intra-cluster pair is within range.
  [[nodiscard]] double range() const noexcept { return range_; }

  [[nodiscard]] int cluster_of(int node) const { return cluster_of_.at(static_cast<std::size_t>(node)); }
  [[nodiscard]] int color_of(int cluster) const { return color_of_.at(static_cast<std::size_t>(cluster)); }
  [[nodiscard]] std::span<const int> members(int cluster) const;
  [[nodiscard]] Point position(int node) const { return positions_.at(static_cast<std::size_t>(node)); }
  [[nodiscard]] std::span<const Point> positions() const noexcept { return positions_; }

 private:
  int n_;
  int g_c_;
  int K_;
  int side_;
  int cluster_side_;
  int clusters_per_side_;
  double side_len_;
  double range_;
  std::vector<int> cluster_of_;
  std::vector<int> color_of_;
  std::vector<int> members_;  // grouped by cluster, g_c entries each, ascending node id
  std::vector<Point> positions_;
};

// Throws ConfigError when n or g_c is not a perfect square, when sqrt(g_c) does
// not divide sqrt(n) (the message lists the nearest feasible g_c), or when K is
// not a perfect square.
ClusterLayout build_clusters(int n, int g_c, int K = 1);

// Cluster sizes g_c = d^2 with d | sqrt(n), ascending.
std::vector<int> feasible_cluster_sizes(int n);

// K = (ceil(sqrt(2)(1+delta)) + 1)^2.
int reuse_factor(double delta);

// The K color classes of clusters, class k holding every cluster of color k.
std::vector<std::vector<int>> active_cluster_sets(const ClusterLayout& layout);

struct Link {
  int tx = -1;
  int rx = -1;
  friend bool operator==(const Link&, const Link&) = default;
};

struct Violation {
  enum class Kind { OutOfRange, Interference };
  Kind kind = Kind::Interference;
  Link link;
  int interferer = -1;     // offending transmitter, -1 for OutOfRange
  double distance = 0.0;   // d(tx,rx) for OutOfRange, d(interferer,rx) otherwise
  double threshold = 0.0;  // R or (1+delta)R

  [[nodiscard]] std::string describe() const;
};

// Protocol model: link (tx,rx) succeeds iff d(tx,rx) <= R and no other
// concurrent transmitter lies within (1+delta)R of rx.
std::vector<Violation> verify_protocol_model(const ClusterLayout& layout,
                                             std::span<const Link> links, double delta);

}  // namespace d2dcache
