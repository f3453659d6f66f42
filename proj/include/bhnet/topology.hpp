#pragma once

// Spatial layout of SBSs inside a macrocell and relay trees toward a
// gateway SBS.
//
// Placements use std::mt19937_64, whose output sequence is fixed by the
// standard, with an explicit 53-bit conversion to [0, 1). Given the same
// (n, radius, seed) a placement is reproduced bit-for-bit on one platform.
// Placements for increasing n under one seed are nested: the first points
// are shared.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include <json.hpp>

namespace bhnet {

inline constexpr const char* kPlacementRng = "mt19937_64";

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Placement {
  std::vector<Point> positions;
  double macro_radius_m = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const Placement&) const = default;
};

namespace detail {

inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

inline Placement place_uniform(std::size_t n, double macro_radius_m, std::uint64_t seed) {
  if (!(macro_radius_m > 0)) throw std::invalid_argument("macro_radius_m must be > 0");
  Placement p{{}, macro_radius_m, seed};
  p.positions.reserve(n);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = macro_radius_m * std::sqrt(detail::unit_double(rng));
    const double theta = 2.0 * std::numbers::pi * detail::unit_double(rng);
    p.positions.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return p;
}

struct NearestToCenter {};
struct GatewayIndex {
  std::size_t index = 0;
};
using GatewayRule = std::variant<NearestToCenter, GatewayIndex>;

/// Spanning tree rooted at the gateway. `link_load_bps[i]` is the load on
/// the edge from node i to its parent (zero for the gateway).
struct RelayTree {
  std::vector<Point> positions;
  std::size_t gateway_index = 0;
  std::vector<std::optional<std::size_t>> parent;
  std::vector<double> link_load_bps;

  std::size_t size() const { return parent.size(); }
  std::size_t edge_count() const { return size() == 0 ? 0 : size() - 1; }
};

/// Greedy geographic routing: every non-gateway node attaches to its
/// nearest neighbour among nodes strictly closer to the gateway. Ties in
/// distance are broken by index, so coincident points still form a tree.
inline RelayTree build_relay_tree(const Placement& placement, GatewayRule rule = NearestToCenter{}) {
  const auto& pts = placement.positions;
  const std::size_t n = pts.size();
  if (n == 0) throw std::invalid_argument("placement must be non-empty");

  std::size_t gw = 0;
  if (const auto* idx = std::get_if<GatewayIndex>(&rule)) {
    if (idx->index >= n) throw std::out_of_range("gateway index out of range");
    gw = idx->index;
  } else {
    const Point origin{};
    for (std::size_t i = 1; i < n; ++i)
      if (distance(pts[i], origin) < distance(pts[gw], origin)) gw = i;
  }

  // Total order "closer to the gateway": (distance, not-gateway, index).
  std::vector<double> to_gw(n);
  for (std::size_t i = 0; i < n; ++i) to_gw[i] = distance(pts[i], pts[gw]);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (to_gw[a] != to_gw[b]) return to_gw[a] < to_gw[b];
    if ((a == gw) != (b == gw)) return a == gw;
    return a < b;
  });

  RelayTree tree;
  tree.positions = pts;
  tree.gateway_index = gw;
  tree.parent.assign(n, std::nullopt);
  tree.link_load_bps.assign(n, 0.0);
  for (std::size_t rank = 1; rank < n; ++rank) {
    const std::size_t node = order[rank];
    std::size_t best = order[0];
    double best_d = distance(pts[node], pts[best]);
    for (std::size_t j = 1; j < rank; ++j) {
      const std::size_t cand = order[j];
      const double d = distance(pts[node], pts[cand]);
      if (d < best_d || (d == best_d && cand < best)) {
        best = cand;
        best_d = d;
      }
    }
    tree.parent[node] = best;
  }
  return tree;
}

/// Loads each edge with `per_cell_bps` times the size of the subtree it
/// drains.
inline RelayTree link_loads(RelayTree tree, double per_cell_bps) {
  const std::size_t n = tree.size();
  // Depth ordering: children are processed before their parents.
  std::vector<std::size_t> depth(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t d = 0;
    for (auto p = tree.parent[i]; p; p = tree.parent[*p]) {
      if (++d > n) throw std::logic_error("relay tree contains a cycle");
    }
    depth[i] = d;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return depth[a] > depth[b]; });

  std::vector<std::size_t> subtree(n, 1);
  for (std::size_t node : order)
    if (auto p = tree.parent[node]) subtree[*p] += subtree[node];

  for (std::size_t i = 0; i < n; ++i)
    tree.link_load_bps[i] = tree.parent[i] ? per_cell_bps * static_cast<double>(subtree[i]) : 0.0;
  return tree;
}

/// Sum of loads on edges terminating at the gateway.
inline double gateway_ingress_bps(const RelayTree& tree) {
  double sum = 0.0;
  for (std::size_t i = 0; i < tree.size(); ++i)
    if (tree.parent[i] == tree.gateway_index) sum += tree.link_load_bps[i];
  return sum;
}

inline double max_link_load_bps(const RelayTree& tree) {
  double m = 0.0;
  for (double l : tree.link_load_bps) m = std::max(m, l);
  return m;
}

inline nlohmann::json topology_to_json(const Placement& placement, const RelayTree& tree) {
  nlohmann::json j;
  j["rng"] = kPlacementRng;
  j["seed"] = placement.seed;
  j["macro_radius_m"] = placement.macro_radius_m;
  auto& pos = j["positions"] = nlohmann::json::array();
  for (const auto& p : placement.positions) pos.push_back({p.x, p.y});
  j["gateway_index"] = tree.gateway_index;
  auto& parent = j["parent"] = nlohmann::json::array();
  for (const auto& p : tree.parent) parent.push_back(p ? nlohmann::json(*p) : nlohmann::json());
  j["link_load_bps"] = tree.link_load_bps;
  return j;
}

}  // namespace bhnet
