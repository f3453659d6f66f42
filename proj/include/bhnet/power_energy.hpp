#pragma once

// Transmit/operating power, lifetime energy and energy efficiency.

#include <cmath>
#include <cstdint>

#include "bhnet/link_model.hpp"
#include "bhnet/scenario.hpp"
#include "bhnet/traffic.hpp"

namespace bhnet {

/// P_tx = P_anchor * (r / r_anchor)^alpha * (f / f_anchor)^freq_exponent
inline double tx_power(double radius_m, FrequencyBand band, double alpha, const TxAnchor& anchor) {
  return anchor.power_w * std::pow(radius_m / anchor.radius_m, alpha) *
         std::pow(band.carrier_hz / anchor.carrier_hz, anchor.freq_exponent);
}

inline double operating_power(const PowerCurve& curve, double tx_w) {
  return curve.slope_a * tx_w + curve.offset_b_w;
}

inline double operating_energy(double p_op_w, double lifetime_s) { return p_op_w * lifetime_s; }

inline double embodied_energy(const EmbodiedRule& rule, double operating_j) {
  if (const auto* a = std::get_if<EmbodiedAbsolute>(&rule)) return a->init_j + a->maint_j;
  const double p = std::get<EmbodiedFraction>(rule).fraction;
  return operating_j * p / (1.0 - p);
}

struct CellEnergy {
  double operating_j = 0.0;
  double embodied_j = 0.0;

  double total() const { return operating_j + embodied_j; }
};

inline CellEnergy cell_energy(const CellParams& cell, FrequencyBand band, double alpha,
                              const TxAnchor& anchor) {
  const double p_op = operating_power(cell.power_curve, tx_power(cell.radius_m, band, alpha, anchor));
  CellEnergy e;
  e.operating_j = operating_energy(p_op, cell.lifetime_s);
  e.embodied_j = embodied_energy(cell.embodied, e.operating_j);
  return e;
}

inline EnergyBreakdown system_energy_central(std::int64_t n_small, const CellParams& small,
                                             const CellParams& macro, FrequencyBand band,
                                             double alpha, const TxAnchor& anchor) {
  const CellEnergy m = cell_energy(macro, band, alpha, anchor);
  const CellEnergy s = cell_energy(small, band, alpha, anchor);
  EnergyBreakdown e;
  e.per_macro_operating_j = m.operating_j;
  e.per_macro_embodied_j = m.embodied_j;
  e.per_small_operating_j = s.operating_j;
  e.per_small_embodied_j = s.embodied_j;
  e.system_total_j = m.embodied_j + m.operating_j +
                     static_cast<double>(n_small) * (s.embodied_j + s.operating_j);
  return e;
}

inline EnergyBreakdown system_energy_distribution(std::int64_t k_cluster, const CellParams& small,
                                                  FrequencyBand band, double alpha,
                                                  const TxAnchor& anchor) {
  const CellEnergy s = cell_energy(small, band, alpha, anchor);
  EnergyBreakdown e;
  e.per_small_operating_j = s.operating_j;
  e.per_small_embodied_j = s.embodied_j;
  e.system_total_j = static_cast<double>(k_cluster) * (s.embodied_j + s.operating_j);
  return e;
}

/// Efficiency in bit/s per Joule of lifetime energy.
struct EfficiencyResult {
  double throughput_bps = 0.0;
  double system_energy_j = 0.0;
  double efficiency = 0.0;
};

/// Full evaluation of one scenario, with the intermediate breakdowns.
struct Evaluation {
  ThroughputBreakdown throughput;
  EnergyBreakdown energy;
  EfficiencyResult result;
  double small_se = 0.0;
  double macro_se = 0.0;
};

inline Evaluation evaluate(const ScenarioConfig& sc) {
  Evaluation ev;
  const double alpha = sc.path_loss_alpha;
  ev.small_se = resolve_se(sc.small.spectrum_eff, sc.small.radius_m, alpha);
  if (const auto* central = std::get_if<Central>(&sc.architecture)) {
    const CellParams& macro = sc.macro.value();
    ev.macro_se = resolve_se(macro.spectrum_eff, macro.radius_m, alpha);
    ev.throughput = total_central(central->n_small, {sc.small.bandwidth_hz, ev.small_se},
                                  {macro.bandwidth_hz, ev.macro_se}, sc.overheads);
    ev.energy = system_energy_central(central->n_small, sc.small, macro, sc.band, alpha,
                                      sc.tx_anchor);
  } else {
    const auto k = std::get<Distribution>(sc.architecture).k_cluster;
    ev.throughput = total_distribution({k, ev.small_se, sc.small.bandwidth_hz}, sc.overheads);
    ev.energy = system_energy_distribution(k, sc.small, sc.band, alpha, sc.tx_anchor);
  }
  ev.result.throughput_bps = ev.throughput.total_bps;
  ev.result.system_energy_j = ev.energy.system_total_j;
  ev.result.efficiency = ev.result.throughput_bps / ev.result.system_energy_j;
  return ev;
}

inline EfficiencyResult efficiency(const ScenarioConfig& sc) { return evaluate(sc).result; }

}  // namespace bhnet
