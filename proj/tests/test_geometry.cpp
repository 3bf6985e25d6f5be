#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "d2dcache/errors.hpp"
#include "d2dcache/geometry.hpp"

using namespace d2dcache;

TEST_CASE("grid construction") {
  const auto g49 = build_grid(49);
  REQUIRE(g49.size() == 49);
  double dmin = 1e9;
  for (std::size_t i = 0; i < g49.size(); ++i) {
    for (std::size_t j = i + 1; j < g49.size(); ++j) dmin = std::min(dmin, distance(g49[i], g49[j]));
  }
  CHECK(dmin == doctest::Approx(1.0 / 7.0));

  const auto g1 = build_grid(1);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0].x == 0.5);
  CHECK(g1[0].y == 0.5);

  const auto big = build_grid(10000);
  double cmax = 0.0;
  for (const auto& p : big) cmax = std::max({cmax, p.x, p.y});
  CHECK(cmax < 1.0);
  CHECK(big[101].x == doctest::Approx(0.015));
  CHECK(big[101].y == doctest::Approx(0.015));

  CHECK_THROWS_AS(build_grid(50), ConfigError);
  CHECK_THROWS_AS(build_grid(0), ConfigError);
}

TEST_CASE("cluster layout dimensions") {
  const auto l = build_clusters(10000, 100);
  CHECK(l.clusters_per_side() == 10);
  CHECK(l.num_clusters() == 100);
  CHECK(l.side_len() == doctest::Approx(0.1));
  CHECK(l.range() == doctest::Approx(0.1 * std::sqrt(2.0)));
  for (int c = 0; c < l.num_clusters(); ++c) {
    CHECK(l.members(c).size() == 100);
    for (int v : l.members(c)) CHECK(l.cluster_of(v) == c);
  }
  CHECK(l.cluster_of(0) == 0);
  CHECK(l.cluster_of(10) == 1);
  CHECK(l.cluster_of(1000) == 10);

  const auto whole = build_clusters(400, 400);
  CHECK(whole.num_clusters() == 1);
  CHECK(whole.range() == doctest::Approx(std::sqrt(2.0)));

  const auto single = build_clusters(400, 1);
  CHECK(single.num_clusters() == 400);
}

TEST_CASE("infeasible cluster sizes name their neighbours") {
  try {
    build_clusters(10000, 30);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.rfind("g_c", 0) == 0);
    CHECK(msg.find("25") != std::string::npos);
    CHECK(msg.find("100") != std::string::npos);
  }
  CHECK_THROWS_AS(build_clusters(10000, 9), ConfigError);
  CHECK_THROWS_AS(build_clusters(10000, 100, 3), ConfigError);
  CHECK(feasible_cluster_sizes(10000) ==
        std::vector<int>{1, 4, 16, 25, 100, 400, 625, 2500, 10000});
}

TEST_CASE("range covers every cluster") {
  for (auto [n, g] : {std::pair{100, 4}, {100, 25}, {900, 9}, {2500, 25}, {400, 400}}) {
    const auto l = build_clusters(n, g);
    double worst = 0.0;
    for (int c = 0; c < l.num_clusters(); ++c) {
      const auto mem = l.members(c);
      for (int a : mem) {
        for (int b : mem) worst = std::max(worst, distance(l.position(a), l.position(b)));
      }
    }
    CHECK(worst <= l.range() + 1e-12);
  }
}

TEST_CASE("reuse factor") {
  CHECK(reuse_factor(0.25) == 9);
  CHECK(reuse_factor(0.4) == 9);
  CHECK(reuse_factor(0.5) == 16);
  CHECK(reuse_factor(1.0) == 16);
  for (double d : {0.01, 0.3, 0.7, 2.0, 5.0}) {
    const int K = reuse_factor(d);
    CHECK(exact_sqrt(K) > 0);
  }
  CHECK_THROWS_AS(reuse_factor(0.0), DomainError);
}

TEST_CASE("color classes") {
  const auto l1 = build_clusters(10000, 100, 1);
  const auto s1 = active_cluster_sets(l1);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].size() == 100);

  const auto l4 = build_clusters(10000, 100, 4);
  const auto s4 = active_cluster_sets(l4);
  REQUIRE(s4.size() == 4);
  std::set<int> seen;
  for (const auto& s : s4) {
    CHECK(s.size() == 25);
    for (int c : s) CHECK(seen.insert(c).second);
  }
  CHECK(seen.size() == 100);

  const auto l25 = build_clusters(10000, 100, 25);
  for (const auto& s : active_cluster_sets(l25)) CHECK(s.size() == 4);

  const auto l16 = build_clusters(10000, 25, 16);
  const int cps = l16.clusters_per_side();
  for (int cr = 0; cr + 4 < cps; ++cr) {
    for (int cc = 0; cc + 4 < cps; ++cc) {
      const int c = cr * cps + cc;
      CHECK(l16.color_of(c) == l16.color_of(c + 4));
      CHECK(l16.color_of(c) == l16.color_of(c + 4 * cps));
    }
  }
}

TEST_CASE("protocol model checker") {
  const auto l = build_clusters(100, 4);
  const double delta = 0.5;
  CHECK(verify_protocol_model(l, std::vector<Link>{}, delta).empty());

  // Transmitter 3 sits 0.2 from receiver 1, inside the 0.424 guard disk;
  // transmitter 0 is 0.5 from receiver 5, outside it.
  const std::vector<Link> links{{0, 1}, {3, 5}};
  const auto v = verify_protocol_model(l, links, delta);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::Interference);
  CHECK(v[0].link == Link{0, 1});
  CHECK(v[0].interferer == 3);
  CHECK(v[0].distance == doctest::Approx(0.2));
  CHECK(v[0].threshold == doctest::Approx(1.5 * 0.2 * std::sqrt(2.0)));
  CHECK(v[0].describe().find("interference") != std::string::npos);

  const std::vector<Link> far{{0, 99}};
  const auto o = verify_protocol_model(l, far, delta);
  REQUIRE(o.size() == 1);
  CHECK(o[0].kind == Violation::Kind::OutOfRange);

  const std::vector<Link> bad{{0, 100}};
  CHECK_THROWS_AS(verify_protocol_model(l, bad, delta), DomainError);
}

TEST_CASE("network config validation names the field") {
  NetworkConfig c;
  CHECK_NOTHROW(c.validate());
  c.n = 10;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("n:"), ConfigError);
  c = NetworkConfig{};
  c.delta = 0.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("delta"), ConfigError);
  c = NetworkConfig{};
  c.M = 0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("M:"), ConfigError);
  c = NetworkConfig{};
  c.link_rate = -1.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("C:"), ConfigError);
}
