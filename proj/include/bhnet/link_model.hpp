#pragma once

// Shannon edge-capacity model for small-cell spectrum efficiency.
//
// Edge SNR scales as snr0 * (ref_radius / r)^alpha, so at r == ref_radius
// the efficiency does not depend on alpha. Below the reference radius a
// steeper path loss raises the relative SNR; above it, lowers it.

#include <cmath>

#include "bhnet/scenario.hpp"

namespace bhnet {

struct EdgeLinkModel {
  double snr0 = 31.0;
  double ref_radius_m = 50.0;
};

inline EdgeLinkModel calibrate(double calibration_se, double ref_radius_m = 50.0) {
  return {std::exp2(calibration_se) - 1.0, ref_radius_m};
}

inline double shannon_se(const EdgeLinkModel& model, double radius_m, double alpha) {
  return std::log2(1.0 + model.snr0 * std::pow(model.ref_radius_m / radius_m, alpha));
}

/// Spectrum efficiency of a cell of radius `radius_m`.
inline double resolve_se(const SpectrumEffSource& source, double radius_m, double alpha) {
  if (const auto* f = std::get_if<FixedSe>(&source)) return f->bit_per_s_per_hz;
  const auto& edge = std::get<ShannonEdgeSe>(source);
  // Exact at the calibration point; exp2/log2 do not round-trip bit-for-bit.
  if (radius_m == edge.ref_radius_m) return edge.calibration_se;
  return shannon_se(calibrate(edge.calibration_se, edge.ref_radius_m), radius_m, alpha);
}

}  // namespace bhnet
