#pragma once

// Parameter sweeps over scenario configs, preset figure datasets, and the
// calibration-table verification report.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bhnet/power_energy.hpp"
#include "bhnet/scenario.hpp"

namespace bhnet {

enum class Axis { NSmall, KCluster, Alpha, SmallSe, Band, SmallRadius };

inline std::string_view axis_name(Axis a) {
  switch (a) {
    case Axis::NSmall: return "n_small";
    case Axis::KCluster: return "k_cluster";
    case Axis::Alpha: return "alpha";
    case Axis::SmallSe: return "small_se";
    case Axis::Band: return "band";
    case Axis::SmallRadius: return "small_radius";
  }
  return "?";
}

inline std::optional<Axis> parse_axis(std::string_view name) {
  for (Axis a : {Axis::NSmall, Axis::KCluster, Axis::Alpha, Axis::SmallSe, Axis::Band,
                 Axis::SmallRadius})
    if (axis_name(a) == name) return a;
  return std::nullopt;
}

struct AxisValues {
  Axis axis = Axis::NSmall;
  std::vector<double> values;
};

struct SweepGrid {
  AxisValues primary;
  ScenarioConfig base;
  std::optional<AxisValues> secondary;  // curve family
};

struct SweepRow {
  double primary_value = 0.0;
  std::optional<double> secondary_value;
  double throughput_bps = 0.0;
  double system_energy_j = 0.0;
  double efficiency = 0.0;
};

/// Inclusive arithmetic range start, start + step, ... <= stop. The stop
/// value is included when it lies within 1e-9 steps of the grid.
inline std::vector<double> arange(double start, double stop, double step) {
  if (!(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step)) || !(step > 0))
    throw ValidationError("axis", "range requires finite values and step > 0");
  if (stop < start) throw ValidationError("axis", "range stop must be >= start");
  const auto n = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t i = 0; i <= n; ++i) v.push_back(start + static_cast<double>(i) * step);
  return v;
}

namespace detail {

inline std::string format_point(Axis a, double v) {
  std::ostringstream os;
  os << axis_name(a) << '=' << v;
  return os.str();
}

inline void validate_axis(const AxisValues& ax, const ScenarioConfig& base, const char* role) {
  const std::string field = std::string(role) + " axis " + std::string(axis_name(ax.axis));
  if (ax.values.empty()) throw ValidationError(field, "values must be non-empty");
  for (std::size_t i = 1; i < ax.values.size(); ++i)
    if (!(ax.values[i] > ax.values[i - 1]))
      throw ValidationError(field, "values must be strictly increasing");
  if (ax.axis == Axis::NSmall && !base.is_central())
    throw ValidationError(field, "requires a central base scenario");
  if (ax.axis == Axis::KCluster && base.is_central())
    throw ValidationError(field, "requires a distribution base scenario");
}

}  // namespace detail

/// Returns `base` with `axis` set to `value`, validated.
inline ScenarioConfig apply_axis(ScenarioConfig sc, Axis axis, double value) {
  auto as_count = [&](double v) {
    if (!(std::isfinite(v) && v == std::floor(v)))
      throw ValidationError(std::string(axis_name(axis)), "must be an integer");
    return static_cast<std::int64_t>(v);
  };
  switch (axis) {
    case Axis::NSmall: sc.architecture = Central{as_count(value)}; break;
    case Axis::KCluster: sc.architecture = Distribution{as_count(value)}; break;
    case Axis::Alpha: sc.path_loss_alpha = value; break;
    case Axis::SmallSe: sc.small.spectrum_eff = FixedSe{value}; break;
    case Axis::Band: sc.band.carrier_hz = value; break;
    case Axis::SmallRadius: sc.small.radius_m = value; break;
  }
  validate(sc);
  return sc;
}

/// One row per grid point. With a secondary axis, rows are grouped by the
/// secondary value (outer) and ordered by the primary value (inner).
inline std::vector<SweepRow> run_sweep(const SweepGrid& grid) {
  detail::validate_axis(grid.primary, grid.base, "primary");
  if (grid.secondary) {
    detail::validate_axis(*grid.secondary, grid.base, "secondary");
    if (grid.secondary->axis == grid.primary.axis)
      throw ValidationError("secondary axis", "must differ from the primary axis");
  }

  std::vector<std::optional<double>> outer;
  if (grid.secondary) {
    for (double v : grid.secondary->values) outer.emplace_back(v);
  } else {
    outer.emplace_back(std::nullopt);
  }

  std::vector<SweepRow> rows;
  rows.reserve(outer.size() * grid.primary.values.size());
  for (const auto& sv : outer) {
    for (double pv : grid.primary.values) {
      ScenarioConfig sc = grid.base;
      try {
        if (sv) sc = apply_axis(sc, grid.secondary->axis, *sv);
        sc = apply_axis(sc, grid.primary.axis, pv);
      } catch (const ValidationError& e) {
        std::string at = detail::format_point(grid.primary.axis, pv);
        if (sv) at += ", " + detail::format_point(grid.secondary->axis, *sv);
        throw ValidationError(e.field(), e.detail() + " (at grid point " + at + ")");
      }
      const EfficiencyResult r = efficiency(sc);
      rows.push_back({pv, sv, r.throughput_bps, r.system_energy_j, r.efficiency});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Output

/// Shortest scientific representation that parses back to exactly `v`.
inline std::string format_sci(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  return std::string(buf, res.ptr);
}

/// CSV with LF line endings; axes first, then the three metrics.
inline std::string rows_to_csv(const std::vector<SweepRow>& rows, const SweepGrid& grid) {
  std::string out(axis_name(grid.primary.axis));
  if (grid.secondary) out += "," + std::string(axis_name(grid.secondary->axis));
  out += ",throughput_bps,system_energy_j,efficiency_bps_per_j\n";
  for (const auto& r : rows) {
    out += format_sci(r.primary_value);
    if (grid.secondary) out += "," + format_sci(r.secondary_value.value_or(0.0));
    out += "," + format_sci(r.throughput_bps);
    out += "," + format_sci(r.system_energy_j);
    out += "," + format_sci(r.efficiency);
    out += '\n';
  }
  return out;
}

inline nlohmann::json rows_to_json(const std::vector<SweepRow>& rows, const SweepGrid& grid) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o;
    o[std::string(axis_name(grid.primary.axis))] = r.primary_value;
    if (grid.secondary && r.secondary_value)
      o[std::string(axis_name(grid.secondary->axis))] = *r.secondary_value;
    o["throughput_bps"] = r.throughput_bps;
    o["system_energy_j"] = r.system_energy_j;
    o["efficiency_bps_per_j"] = r.efficiency;
    arr.push_back(std::move(o));
  }
  return arr;
}

// ---------------------------------------------------------------------------
// Figure presets

enum class Figure { Fig3a, Fig3b, Fig4a, Fig4b, Fig5a, Fig5b };

inline constexpr std::array kAllFigures{Figure::Fig3a, Figure::Fig3b, Figure::Fig4a,
                                        Figure::Fig4b, Figure::Fig5a, Figure::Fig5b};

inline std::string_view figure_name(Figure f) {
  switch (f) {
    case Figure::Fig3a: return "fig3a";
    case Figure::Fig3b: return "fig3b";
    case Figure::Fig4a: return "fig4a";
    case Figure::Fig4b: return "fig4b";
    case Figure::Fig5a: return "fig5a";
    case Figure::Fig5b: return "fig5b";
  }
  return "?";
}

inline std::optional<Figure> parse_figure(std::string_view name) {
  for (Figure f : kAllFigures)
    if (figure_name(f) == name) return f;
  return std::nullopt;
}

inline const std::vector<double> kFigureSeFamily{1.0, 2.5, 5.0, 7.5, 10.0};
inline const std::vector<double> kFigureBands{5.8e9, 28e9, 60e9};
inline const std::vector<double> kFigureRadii{20.0, 30.0, 40.0, 50.0, 75.0, 100.0};
inline constexpr std::int64_t kFig5NSmall = 100;
inline constexpr std::int64_t kFig5KCluster = 10;

inline SweepGrid figure_grid(Figure f) {
  const auto n_axis = AxisValues{Axis::NSmall, arange(0, 1000, 50)};
  const auto k_axis = AxisValues{Axis::KCluster, arange(1, 100, 1)};
  const auto alpha_axis = AxisValues{Axis::Alpha, arange(2.5, 4.0, 0.1)};
  switch (f) {
    case Figure::Fig3a:
      return {n_axis, default_central(0), AxisValues{Axis::SmallSe, kFigureSeFamily}};
    case Figure::Fig3b:
      return {k_axis, default_distribution(1), AxisValues{Axis::SmallSe, kFigureSeFamily}};
    case Figure::Fig4a:
      return {AxisValues{Axis::NSmall, arange(10, 1000, 10)}, default_central(0),
              AxisValues{Axis::Band, kFigureBands}};
    case Figure::Fig4b:
      return {k_axis, default_distribution(1), AxisValues{Axis::Band, kFigureBands}};
    case Figure::Fig5a:
    case Figure::Fig5b: {
      ScenarioConfig base = f == Figure::Fig5a ? default_central(kFig5NSmall)
                                               : default_distribution(kFig5KCluster);
      base.small.spectrum_eff = ShannonEdgeSe{5.0, 50.0};
      return {alpha_axis, base, AxisValues{Axis::SmallRadius, kFigureRadii}};
    }
  }
  return {};
}

inline std::vector<SweepRow> figure_dataset(Figure f) { return run_sweep(figure_grid(f)); }

// ---------------------------------------------------------------------------
// Calibration table verification

struct Table1Cell {
  std::string quantity;  // "P_TX macro", "P_OP small", ...
  double band_hz = 0.0;
  double computed = 0.0;
  double expected = 0.0;
  bool pass = false;
  double computed_exact = 0.0;  // P_OP at the unrounded transmit power
};

struct Table1Report {
  std::vector<Table1Cell> cells;

  std::size_t passed() const {
    std::size_t n = 0;
    for (const auto& c : cells) n += c.pass ? 1 : 0;
    return n;
  }
  bool all_pass() const { return passed() == cells.size(); }
};

inline constexpr double kTxTolerance = 0.005;

/// Rounds to three significant digits, the precision the table prints
/// transmit powers at.
inline double round_sig3(double v) {
  if (v == 0.0) return 0.0;
  const double mag = std::pow(10.0, std::floor(std::log10(std::abs(v))) - 2.0);
  return std::round(v / mag) * mag;
}

/// P_TX cells pass within +/-0.5%. P_OP cells are evaluated at the
/// transmit power as printed in the table (3 significant digits) and
/// pass when the floored value equals the table integer.
inline Table1Report table1_report() {
  struct Expected {
    CellClass cls;
    double band_hz;
    double tx_w;
    double op_w;
  };
  static constexpr Expected kTable[] = {
      {CellClass::Macro, 5.8e9, 10.0, 568.0},   {CellClass::Macro, 28e9, 233.0, 5352.0},
      {CellClass::Macro, 60e9, 1070.0, 23305.0}, {CellClass::Small, 5.8e9, 0.0063, 71.0},
      {CellClass::Small, 28e9, 0.147, 72.0},     {CellClass::Small, 60e9, 0.675, 76.0},
  };
  const double alpha = 3.2;
  const TxAnchor anchor = TxAnchor::table1();

  Table1Report rep;
  for (const auto& row : kTable) {
    const FrequencyBand band{row.band_hz};
    const CellParams cell = default_table1(band, row.cls);
    const double tx = tx_power(cell.radius_m, band, alpha, anchor);
    const std::string who = row.cls == CellClass::Macro ? "macro" : "small";
    rep.cells.push_back({"P_TX " + who, row.band_hz, tx, row.tx_w,
                         std::abs(tx - row.tx_w) <= kTxTolerance * row.tx_w, tx});
  }
  for (const auto& row : kTable) {
    const FrequencyBand band{row.band_hz};
    const CellParams cell = default_table1(band, row.cls);
    const double tx = tx_power(cell.radius_m, band, alpha, anchor);
    const double op = operating_power(cell.power_curve, round_sig3(tx));
    const std::string who = row.cls == CellClass::Macro ? "macro" : "small";
    rep.cells.push_back({"P_OP " + who, row.band_hz, op, row.op_w, std::floor(op) == row.op_w,
                         operating_power(cell.power_curve, tx)});
  }
  return rep;
}

}  // namespace bhnet
