#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bhnet/topology.hpp"

namespace bhnet {
namespace {

Placement fixed(std::vector<Point> pts) { return {std::move(pts), 100.0, 0}; }

// Independent brute-force reading of the greedy rule: scan every node,
// keep the nearest one that ranks before `node` in (distance to gateway,
// index) order.
std::vector<std::optional<std::size_t>> brute_force_parents(const std::vector<Point>& pts,
                                                            std::size_t gw) {
  const std::size_t n = pts.size();
  auto before = [&](std::size_t a, std::size_t b) {
    const double da = distance(pts[a], pts[gw]);
    const double db = distance(pts[b], pts[gw]);
    if (da != db) return da < db;
    if (a == gw || b == gw) return a == gw && b != gw;
    return a < b;
  };
  std::vector<std::optional<std::size_t>> parent(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == gw) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !before(j, i)) continue;
      if (!parent[i]) {
        parent[i] = j;
        continue;
      }
      const double dj = distance(pts[i], pts[j]);
      const double dp = distance(pts[i], pts[*parent[i]]);
      if (dj < dp || (dj == dp && j < *parent[i])) parent[i] = j;
    }
  }
  return parent;
}

std::vector<std::size_t> brute_force_subtree_sizes(const RelayTree& t) {
  std::vector<std::size_t> size(t.size(), 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::optional<std::size_t> a = i; a; a = t.parent[*a]) ++size[*a];
  }
  return size;
}

TEST(PlaceUniform, Empty) {
  EXPECT_TRUE(place_uniform(0, 500, 1).positions.empty());
}

TEST(PlaceUniform, MeanRadius) {
  const auto p = place_uniform(10000, 500, 42);
  ASSERT_EQ(p.positions.size(), 10000u);
  double sum = 0;
  for (const auto& q : p.positions) {
    const double r = std::hypot(q.x, q.y);
    ASSERT_LE(r, 500.0);
    sum += r;
  }
  EXPECT_NEAR(sum / 10000, 2.0 / 3.0 * 500, 0.02 * 2.0 / 3.0 * 500);
}

TEST(PlaceUniform, Deterministic) {
  EXPECT_EQ(place_uniform(257, 500, 9), place_uniform(257, 500, 9));
  EXPECT_NE(place_uniform(257, 500, 9).positions, place_uniform(257, 500, 10).positions);
  // Nested prefixes.
  const auto small = place_uniform(10, 500, 9);
  const auto big = place_uniform(20, 500, 9);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(small.positions[i], big.positions[i]);
}

TEST(RelayTree, SingleNode) {
  const auto t = build_relay_tree(fixed({{3, 4}}));
  EXPECT_EQ(t.gateway_index, 0u);
  EXPECT_EQ(t.edge_count(), 0u);
  EXPECT_FALSE(t.parent[0].has_value());
}

TEST(RelayTree, ChainOfFour) {
  // Indices deliberately out of spatial order; gateway at x = 0.
  const auto t = link_loads(
      build_relay_tree(fixed({{20, 0}, {0, 0}, {30, 0}, {10, 0}}), GatewayIndex{1}), 1e9);
  EXPECT_EQ(t.gateway_index, 1u);
  EXPECT_EQ(t.parent[3], 1u);
  EXPECT_EQ(t.parent[0], 3u);
  EXPECT_EQ(t.parent[2], 0u);
  EXPECT_EQ(t.link_load_bps[3], 3e9);
  EXPECT_EQ(t.link_load_bps[0], 2e9);
  EXPECT_EQ(t.link_load_bps[2], 1e9);
  EXPECT_EQ(t.link_load_bps[1], 0.0);
  EXPECT_EQ(gateway_ingress_bps(t), 3e9);
}

TEST(RelayTree, Star) {
  const auto t = link_loads(
      build_relay_tree(fixed({{0, 0}, {10, 0}, {-10, 0}, {0, 10}, {0, -10}})), 1e9);
  EXPECT_EQ(t.gateway_index, 0u);
  for (std::size_t i = 1; i < 5; ++i) {
    EXPECT_EQ(t.parent[i], 0u);
    EXPECT_EQ(t.link_load_bps[i], 1e9);
  }
  const auto zero = link_loads(t, 0.0);
  for (double l : zero.link_load_bps) EXPECT_EQ(l, 0.0);
}

TEST(RelayTree, DuplicatePointsResolveByIndex) {
  const auto t = build_relay_tree(fixed({{5, 5}, {5, 5}, {5, 5}, {1, 0}}));
  EXPECT_EQ(t.gateway_index, 3u);
  EXPECT_EQ(t.parent[0], 3u);
  EXPECT_EQ(t.parent[1], 0u);
  EXPECT_EQ(t.parent[2], 0u);
}

TEST(RelayTree, RejectsEmptyAndBadGateway) {
  EXPECT_THROW(build_relay_tree(fixed({})), std::invalid_argument);
  EXPECT_THROW(build_relay_tree(fixed({{0, 0}}), GatewayIndex{1}), std::out_of_range);
}

TEST(RelayTreeProperty, MatchesBruteForceAndConservesFlow) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 1 + seed * 7 % 150;
    const auto p = place_uniform(n, 500, seed);
    const auto tree = link_loads(build_relay_tree(p), 2.5e8);

    EXPECT_EQ(tree.parent, brute_force_parents(p.positions, tree.gateway_index));
    std::size_t edges = 0;
    for (const auto& par : tree.parent) edges += par ? 1 : 0;
    EXPECT_EQ(edges, n - 1);

    const auto sizes = brute_force_subtree_sizes(tree);
    EXPECT_EQ(sizes[tree.gateway_index], n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != tree.gateway_index) {
        EXPECT_EQ(tree.link_load_bps[i], 2.5e8 * static_cast<double>(sizes[i]));
      }
    }
    EXPECT_EQ(gateway_ingress_bps(tree), static_cast<double>(n - 1) * 2.5e8);
  }
}

TEST(RelayTreeProperty, Deterministic) {
  const auto a = link_loads(build_relay_tree(place_uniform(300, 500, 5)), 1e8);
  const auto b = link_loads(build_relay_tree(place_uniform(300, 500, 5)), 1e8);
  EXPECT_EQ(a.parent, b.parent);
  EXPECT_EQ(a.link_load_bps, b.link_load_bps);
  EXPECT_EQ(topology_to_json(place_uniform(300, 500, 5), a).dump(),
            topology_to_json(place_uniform(300, 500, 5), b).dump());
}

TEST(RelayTreeProperty, IngressGrowsWithNestedPlacements) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (std::size_t n = 1; n <= 120; ++n) {
      const auto t = link_loads(build_relay_tree(place_uniform(n, 500, seed)), 1.0);
      EXPECT_EQ(gateway_ingress_bps(t), static_cast<double>(n - 1));
      EXPECT_GE(max_link_load_bps(t) * static_cast<double>(n), gateway_ingress_bps(t));
    }
  }
}

// Greedy routing does not keep the maximum link load monotone in N. With
// seed 1, node 8 becomes the parent of node 2 and splits the heaviest
// subtree (6 nodes behind node 0) into two branches of 3 and 4.
TEST(RelayTreeProperty, MaxLoadCanDropWhenNodeIsAdded) {
  const auto t8 = link_loads(build_relay_tree(place_uniform(8, 500, 1)), 1.0);
  const auto t9 = link_loads(build_relay_tree(place_uniform(9, 500, 1)), 1.0);
  EXPECT_EQ(max_link_load_bps(t8), 6.0);
  EXPECT_EQ(max_link_load_bps(t9), 4.0);
}

TEST(TopologyExport, Schema) {
  const auto p = place_uniform(3, 500, 77);
  const auto t = link_loads(build_relay_tree(p), 1.0);
  const auto j = topology_to_json(p, t);
  EXPECT_EQ(j["rng"], "mt19937_64");
  EXPECT_EQ(j["seed"], 77);
  EXPECT_EQ(j["positions"].size(), 3u);
  EXPECT_EQ(j["positions"][0].size(), 2u);
  EXPECT_EQ(j["gateway_index"], t.gateway_index);
  EXPECT_TRUE(j["parent"][t.gateway_index].is_null());
  EXPECT_EQ(j["link_load_bps"].size(), 3u);
}

}  // namespace
}  // namespace bhnet
