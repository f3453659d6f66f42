#pragma once

// Backhaul traffic for the two aggregation architectures.
//
// Central: every SBS and the MBS backhaul through the MBS. Uplink carries
// only the X2 share of B*S; downlink carries user data plus S1 and X2
// overheads.
// Distribution: K cooperating SBSs relay through one gateway SBS. Both
// directions carry the overhead factor, and the downlink additionally
// carries the cooperative term (K - 1) * S shared within the cluster.

#include <cstdint>

#include "bhnet/scenario.hpp"

namespace bhnet {

inline double small_up_central(double bandwidth_hz, double se, const Overheads& oh = {}) {
  return oh.x2 * bandwidth_hz * se;
}

inline double small_down_central(double bandwidth_hz, double se, const Overheads& oh = {}) {
  return oh.downlink_factor() * bandwidth_hz * se;
}

inline double macro_up_central(double bandwidth_hz, double se, const Overheads& oh = {}) {
  return oh.x2 * bandwidth_hz * se;
}

inline double macro_down_central(double bandwidth_hz, double se, const Overheads& oh = {}) {
  return oh.downlink_factor() * bandwidth_hz * se;
}

/// One cell class reduced to what the traffic model consumes.
struct CellLoad {
  double bandwidth_hz = 0.0;
  double se = 0.0;
};

inline ThroughputBreakdown total_central(std::int64_t n_small, const CellLoad& small,
                                         const CellLoad& macro, const Overheads& oh = {}) {
  const auto n = static_cast<double>(n_small);
  ThroughputBreakdown t;
  t.small_up_bps = small_up_central(small.bandwidth_hz, small.se, oh);
  t.small_down_bps = small_down_central(small.bandwidth_hz, small.se, oh);
  t.macro_up_bps = macro_up_central(macro.bandwidth_hz, macro.se, oh);
  t.macro_down_bps = macro_down_central(macro.bandwidth_hz, macro.se, oh);
  t.total_up_bps = n * t.small_up_bps + t.macro_up_bps;
  t.total_down_bps = n * t.small_down_bps + t.macro_down_bps;
  t.total_bps = t.total_up_bps + t.total_down_bps;
  return t;
}

struct ClusterSpec {
  std::int64_t k_cluster = 1;
  double per_cell_se = 0.0;
  double bandwidth_hz = 0.0;
};

/// Cooperative-cluster spectrum efficiency contributed by the K - 1
/// neighbours of a cell.
inline double comp_se(std::int64_t k_cluster, double per_cell_se) {
  return static_cast<double>(k_cluster - 1) * per_cell_se;
}

/// Per-cell figures go in small_*; macro_* stay zero. The gateway SBS is
/// counted in K like every other member.
inline ThroughputBreakdown total_distribution(const ClusterSpec& cluster,
                                              const Overheads& oh = {}) {
  const auto k = static_cast<double>(cluster.k_cluster);
  const double f = oh.downlink_factor();
  ThroughputBreakdown t;
  t.small_up_bps = f * cluster.bandwidth_hz * cluster.per_cell_se;
  t.small_down_bps =
      f * cluster.bandwidth_hz * (cluster.per_cell_se + comp_se(cluster.k_cluster, cluster.per_cell_se));
  t.total_up_bps = k * t.small_up_bps;
  t.total_down_bps = k * t.small_down_bps;
  t.total_bps = t.total_up_bps + t.total_down_bps;
  return t;
}

}  // namespace bhnet
