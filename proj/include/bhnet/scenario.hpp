#pragma once

// Domain types, calibration defaults and configuration loading for the
// small-cell backhaul models.
//
// All quantities are SI: Hz, W, m, s, J, bit/s. Spectrum efficiencies are
// bit/s/Hz.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include <json.hpp>

namespace bhnet {

using json = nlohmann::json;

inline constexpr double kSecondsPerYear = 3.1536e7;  // 365 days

/// Thrown when a config document cannot be parsed as JSON.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a value violates a type invariant. `field()` is the dotted
/// path of the offending field, e.g. "small.bandwidth_hz".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)),
        detail_(what) {}

  const std::string& field() const noexcept { return field_; }
  /// Message without the field prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string field_;
  std::string detail_;
};

struct FrequencyBand {
  double carrier_hz = 5.8e9;

  bool operator==(const FrequencyBand&) const = default;
};

inline constexpr FrequencyBand kBand5_8GHz{5.8e9};
inline constexpr FrequencyBand kBand28GHz{28e9};
inline constexpr FrequencyBand kBand60GHz{60e9};

/// Operating power as an affine function of transmit power: a * P_tx + b.
struct PowerCurve {
  double slope_a = 1.0;
  double offset_b_w = 1.0;

  bool operator==(const PowerCurve&) const = default;
};

/// Reference point for transmit-power scaling with radius and carrier.
struct TxAnchor {
  double power_w = 10.0;
  double radius_m = 500.0;
  double carrier_hz = 5.8e9;
  double freq_exponent = 2.0;

  bool operator==(const TxAnchor&) const = default;

  /// 10 W at 500 m on 5.8 GHz; reproduces the calibration table.
  static constexpr TxAnchor table1() { return {10.0, 500.0, 5.8e9, 2.0}; }
  /// 40 W at 1 km normalization. Does not reproduce the calibration table
  /// (gives 4.35 W at 500 m), kept for comparison runs.
  static constexpr TxAnchor normalized() { return {40.0, 1000.0, 5.8e9, 2.0}; }
};

struct EmbodiedAbsolute {
  double init_j = 0.0;
  double maint_j = 0.0;

  bool operator==(const EmbodiedAbsolute&) const = default;
};

/// Embodied energy is `fraction` of the total (embodied + operating).
struct EmbodiedFraction {
  double fraction = 0.2;

  bool operator==(const EmbodiedFraction&) const = default;
};

using EmbodiedRule = std::variant<EmbodiedAbsolute, EmbodiedFraction>;

struct FixedSe {
  double bit_per_s_per_hz = 5.0;

  bool operator==(const FixedSe&) const = default;
};

/// Spectrum efficiency derived from a Shannon edge-SNR model pinned so the
/// cell at `ref_radius_m` achieves `calibration_se`.
struct ShannonEdgeSe {
  double calibration_se = 5.0;
  double ref_radius_m = 50.0;

  bool operator==(const ShannonEdgeSe&) const = default;
};

using SpectrumEffSource = std::variant<FixedSe, ShannonEdgeSe>;

enum class CellClass { Macro, Small };

struct CellParams {
  double bandwidth_hz = 1e8;
  SpectrumEffSource spectrum_eff = FixedSe{5.0};
  double radius_m = 50.0;
  PowerCurve power_curve;
  double lifetime_s = kSecondsPerYear;
  EmbodiedRule embodied = EmbodiedFraction{0.2};

  bool operator==(const CellParams&) const = default;
};

struct Overheads {
  double s1 = 0.10;  // S1 signalling on top of user data
  double x2 = 0.04;  // X2 handover / coordination

  bool operator==(const Overheads&) const = default;

  double downlink_factor() const { return 1.0 + s1 + x2; }
};

struct Central {
  std::int64_t n_small = 0;

  bool operator==(const Central&) const = default;
};

struct Distribution {
  std::int64_t k_cluster = 1;

  bool operator==(const Distribution&) const = default;
};

using Architecture = std::variant<Central, Distribution>;

struct ScenarioConfig {
  Architecture architecture = Central{};
  FrequencyBand band;
  std::optional<CellParams> macro;
  CellParams small;
  double path_loss_alpha = 3.2;
  TxAnchor tx_anchor = TxAnchor::table1();
  Overheads overheads;

  bool operator==(const ScenarioConfig&) const = default;

  bool is_central() const { return std::holds_alternative<Central>(architecture); }
};

struct ThroughputBreakdown {
  double small_up_bps = 0.0;
  double small_down_bps = 0.0;
  double macro_up_bps = 0.0;
  double macro_down_bps = 0.0;
  double total_up_bps = 0.0;
  double total_down_bps = 0.0;
  double total_bps = 0.0;
};

struct EnergyBreakdown {
  double per_macro_operating_j = 0.0;
  double per_macro_embodied_j = 0.0;
  double per_small_operating_j = 0.0;
  double per_small_embodied_j = 0.0;
  double system_total_j = 0.0;
};

/// Calibration defaults. Parameters are band-independent; the band only
/// enters through transmit-power scaling.
inline CellParams default_table1(FrequencyBand /*band*/, CellClass cls) {
  CellParams p;
  p.bandwidth_hz = 1e8;
  p.spectrum_eff = FixedSe{5.0};
  if (cls == CellClass::Macro) {
    p.radius_m = 500.0;
    p.power_curve = {21.45, 354.44};
    p.lifetime_s = 10.0 * kSecondsPerYear;
    p.embodied = EmbodiedAbsolute{75e9, 10e9};
  } else {
    p.radius_m = 50.0;
    p.power_curve = {7.84, 71.50};
    p.lifetime_s = 5.0 * kSecondsPerYear;
    p.embodied = EmbodiedFraction{0.20};
  }
  return p;
}

inline ScenarioConfig default_central(std::int64_t n_small, FrequencyBand band = kBand5_8GHz) {
  ScenarioConfig c;
  c.architecture = Central{n_small};
  c.band = band;
  c.macro = default_table1(band, CellClass::Macro);
  c.small = default_table1(band, CellClass::Small);
  return c;
}

inline ScenarioConfig default_distribution(std::int64_t k_cluster,
                                           FrequencyBand band = kBand5_8GHz) {
  ScenarioConfig c;
  c.architecture = Distribution{k_cluster};
  c.band = band;
  c.small = default_table1(band, CellClass::Small);
  return c;
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline void require(bool ok, const std::string& field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

inline bool finite(double v) { return std::isfinite(v); }

}  // namespace detail

inline void validate(const CellParams& p, const std::string& prefix) {
  using detail::finite;
  using detail::require;
  require(finite(p.bandwidth_hz) && p.bandwidth_hz > 0, prefix + ".bandwidth_hz", "must be > 0");
  require(finite(p.radius_m) && p.radius_m > 0, prefix + ".radius_m", "must be > 0");
  require(finite(p.lifetime_s) && p.lifetime_s > 0, prefix + ".lifetime_s", "must be > 0");
  require(finite(p.power_curve.slope_a) && p.power_curve.slope_a > 0, prefix + ".power_curve.a",
          "must be > 0");
  require(finite(p.power_curve.offset_b_w) && p.power_curve.offset_b_w > 0,
          prefix + ".power_curve.b_w", "must be > 0");
  if (const auto* f = std::get_if<FixedSe>(&p.spectrum_eff)) {
    require(finite(f->bit_per_s_per_hz) && f->bit_per_s_per_hz >= 0,
            prefix + ".spectrum_eff.fixed", "must be >= 0");
  } else {
    const auto& s = std::get<ShannonEdgeSe>(p.spectrum_eff);
    require(finite(s.calibration_se) && s.calibration_se > 0,
            prefix + ".spectrum_eff.shannon_edge.calibration_se", "must be > 0");
    require(finite(s.ref_radius_m) && s.ref_radius_m > 0,
            prefix + ".spectrum_eff.shannon_edge.ref_radius_m", "must be > 0");
  }
  if (const auto* a = std::get_if<EmbodiedAbsolute>(&p.embodied)) {
    require(finite(a->init_j) && a->init_j >= 0, prefix + ".embodied.absolute.init_j",
            "must be >= 0");
    require(finite(a->maint_j) && a->maint_j >= 0, prefix + ".embodied.absolute.maint_j",
            "must be >= 0");
  } else {
    const double f = std::get<EmbodiedFraction>(p.embodied).fraction;
    require(finite(f) && f > 0 && f < 1, prefix + ".embodied.fraction_of_total",
            "must be in (0, 1)");
  }
}

inline void validate(const ScenarioConfig& c) {
  using detail::finite;
  using detail::require;
  if (const auto* central = std::get_if<Central>(&c.architecture)) {
    require(central->n_small >= 0, "architecture.n_small", "must be >= 0");
    require(c.macro.has_value(), "macro", "required for central architecture");
  } else {
    require(std::get<Distribution>(c.architecture).k_cluster >= 1, "architecture.k_cluster",
            "must be >= 1");
    require(!c.macro.has_value(), "macro", "only valid for central architecture");
  }
  require(finite(c.band.carrier_hz) && c.band.carrier_hz > 0, "band_hz", "must be > 0");
  if (c.macro) validate(*c.macro, "macro");
  validate(c.small, "small");
  require(finite(c.path_loss_alpha) && c.path_loss_alpha > 0, "alpha", "must be > 0");
  const auto& a = c.tx_anchor;
  require(finite(a.power_w) && a.power_w > 0, "tx_anchor.power_w", "must be > 0");
  require(finite(a.radius_m) && a.radius_m > 0, "tx_anchor.radius_m", "must be > 0");
  require(finite(a.carrier_hz) && a.carrier_hz > 0, "tx_anchor.carrier_hz", "must be > 0");
  require(finite(a.freq_exponent) && a.freq_exponent > 0, "tx_anchor.freq_exponent",
          "must be > 0");
  require(finite(c.overheads.s1) && c.overheads.s1 >= 0 && c.overheads.s1 < 1, "overheads.s1",
          "must be in [0, 1)");
  require(finite(c.overheads.x2) && c.overheads.x2 >= 0 && c.overheads.x2 < 1, "overheads.x2",
          "must be in [0, 1)");
}

// ---------------------------------------------------------------------------
// JSON schema
//
// {
//   "architecture": {"type": "central", "n_small": 100}
//                 | {"type": "distribution", "k_cluster": 10},
//   "band_hz": 5.8e9,
//   "macro": <cell>, "small": <cell>,
//   "alpha": 3.2,
//   "tx_anchor": "table1" | "normalized"
//              | {"power_w", "radius_m", "carrier_hz", "freq_exponent"},
//   "overheads": {"s1": 0.1, "x2": 0.04}
// }
// <cell> = {"bandwidth_hz", "radius_m", "lifetime_s",
//           "spectrum_eff": {"fixed": 5}
//                         | {"shannon_edge": {"calibration_se", "ref_radius_m"}},
//           "power_curve": {"a", "b_w"},
//           "embodied": {"absolute": {"init_j", "maint_j"}}
//                     | {"fraction_of_total": 0.2}}
//
// Every key except "architecture" is optional and falls back to the
// calibration defaults. Unknown keys are rejected.

namespace detail {

inline std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

template <std::size_t N>
void check_keys(const json& obj, const std::string& prefix, const char* const (&allowed)[N]) {
  if (!obj.is_object()) throw ValidationError(prefix, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ValidationError(join(prefix, key), "unknown key");
  }
}

inline double number(const json& obj, const char* key, const std::string& prefix, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ValidationError(join(prefix, key), "expected a number");
  return it->get<double>();
}

inline std::int64_t count(const json& v, const std::string& field) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15)
      return static_cast<std::int64_t>(d);
  }
  throw ValidationError(field, "expected an integer");
}

inline CellParams parse_cell(const json& obj, const std::string& prefix, CellParams p) {
  static constexpr const char* kKeys[] = {"bandwidth_hz", "radius_m",    "lifetime_s",
                                          "spectrum_eff", "power_curve", "embodied"};
  check_keys(obj, prefix, kKeys);
  p.bandwidth_hz = number(obj, "bandwidth_hz", prefix, p.bandwidth_hz);
  p.radius_m = number(obj, "radius_m", prefix, p.radius_m);
  p.lifetime_s = number(obj, "lifetime_s", prefix, p.lifetime_s);

  if (auto it = obj.find("spectrum_eff"); it != obj.end()) {
    const std::string sp = prefix + ".spectrum_eff";
    static constexpr const char* kSe[] = {"fixed", "shannon_edge"};
    check_keys(*it, sp, kSe);
    if (it->size() != 1) throw ValidationError(sp, "expected exactly one of fixed, shannon_edge");
    if (it->contains("fixed")) {
      if (!(*it)["fixed"].is_number()) throw ValidationError(sp + ".fixed", "expected a number");
      p.spectrum_eff = FixedSe{(*it)["fixed"].get<double>()};
    } else {
      const std::string ep = sp + ".shannon_edge";
      static constexpr const char* kEdge[] = {"calibration_se", "ref_radius_m"};
      const json& e = (*it)["shannon_edge"];
      check_keys(e, ep, kEdge);
      ShannonEdgeSe s;
      s.calibration_se = number(e, "calibration_se", ep, s.calibration_se);
      s.ref_radius_m = number(e, "ref_radius_m", ep, s.ref_radius_m);
      p.spectrum_eff = s;
    }
  }

  if (auto it = obj.find("power_curve"); it != obj.end()) {
    const std::string pp = prefix + ".power_curve";
    static constexpr const char* kPc[] = {"a", "b_w"};
    check_keys(*it, pp, kPc);
    p.power_curve.slope_a = number(*it, "a", pp, p.power_curve.slope_a);
    p.power_curve.offset_b_w = number(*it, "b_w", pp, p.power_curve.offset_b_w);
  }

  if (auto it = obj.find("embodied"); it != obj.end()) {
    const std::string ep = prefix + ".embodied";
    static constexpr const char* kEm[] = {"absolute", "fraction_of_total"};
    check_keys(*it, ep, kEm);
    if (it->size() != 1)
      throw ValidationError(ep, "expected exactly one of absolute, fraction_of_total");
    if (it->contains("absolute")) {
      const std::string ap = ep + ".absolute";
      static constexpr const char* kAbs[] = {"init_j", "maint_j"};
      const json& a = (*it)["absolute"];
      check_keys(a, ap, kAbs);
      p.embodied = EmbodiedAbsolute{number(a, "init_j", ap, 0.0), number(a, "maint_j", ap, 0.0)};
    } else {
      p.embodied = EmbodiedFraction{number(*it, "fraction_of_total", ep, 0.2)};
    }
  }
  return p;
}

inline json cell_to_json(const CellParams& p) {
  json j;
  j["bandwidth_hz"] = p.bandwidth_hz;
  j["radius_m"] = p.radius_m;
  j["lifetime_s"] = p.lifetime_s;
  if (const auto* f = std::get_if<FixedSe>(&p.spectrum_eff)) {
    j["spectrum_eff"] = {{"fixed", f->bit_per_s_per_hz}};
  } else {
    const auto& s = std::get<ShannonEdgeSe>(p.spectrum_eff);
    j["spectrum_eff"] = {
        {"shannon_edge", {{"calibration_se", s.calibration_se}, {"ref_radius_m", s.ref_radius_m}}}};
  }
  j["power_curve"] = {{"a", p.power_curve.slope_a}, {"b_w", p.power_curve.offset_b_w}};
  if (const auto* a = std::get_if<EmbodiedAbsolute>(&p.embodied)) {
    j["embodied"] = {{"absolute", {{"init_j", a->init_j}, {"maint_j", a->maint_j}}}};
  } else {
    j["embodied"] = {{"fraction_of_total", std::get<EmbodiedFraction>(p.embodied).fraction}};
  }
  return j;
}

}  // namespace detail

/// Builds a validated config from a parsed document, filling defaults.
inline ScenarioConfig scenario_from_json(const json& doc) {
  using namespace detail;
  static constexpr const char* kTop[] = {"architecture", "band_hz", "macro",    "small",
                                         "alpha",        "tx_anchor", "overheads"};
  if (!doc.is_object()) throw ValidationError("", "document must be a JSON object");
  check_keys(doc, "", kTop);

  auto arch = doc.find("architecture");
  if (arch == doc.end()) throw ValidationError("architecture", "architecture missing");
  static constexpr const char* kArch[] = {"type", "n_small", "k_cluster"};
  check_keys(*arch, "architecture", kArch);
  auto type = arch->find("type");
  if (type == arch->end() || !type->is_string())
    throw ValidationError("architecture.type", "expected \"central\" or \"distribution\"");

  ScenarioConfig c;
  c.band.carrier_hz = number(doc, "band_hz", "", c.band.carrier_hz);

  if (*type == "central") {
    if (arch->contains("k_cluster"))
      throw ValidationError("architecture.k_cluster", "not valid for central architecture");
    auto n = arch->find("n_small");
    if (n == arch->end()) throw ValidationError("architecture.n_small", "missing");
    c.architecture = Central{count(*n, "architecture.n_small")};
    CellParams macro = default_table1(c.band, CellClass::Macro);
    if (auto m = doc.find("macro"); m != doc.end()) macro = parse_cell(*m, "macro", macro);
    c.macro = macro;
  } else if (*type == "distribution") {
    if (arch->contains("n_small"))
      throw ValidationError("architecture.n_small", "not valid for distribution architecture");
    auto k = arch->find("k_cluster");
    if (k == arch->end()) throw ValidationError("architecture.k_cluster", "missing");
    c.architecture = Distribution{count(*k, "architecture.k_cluster")};
    if (doc.contains("macro"))
      throw ValidationError("macro", "only valid for central architecture");
  } else {
    throw ValidationError("architecture.type", "expected \"central\" or \"distribution\"");
  }

  c.small = default_table1(c.band, CellClass::Small);
  if (auto s = doc.find("small"); s != doc.end()) c.small = parse_cell(*s, "small", c.small);

  c.path_loss_alpha = number(doc, "alpha", "", c.path_loss_alpha);

  if (auto a = doc.find("tx_anchor"); a != doc.end()) {
    if (a->is_string()) {
      if (*a == "table1") {
        c.tx_anchor = TxAnchor::table1();
      } else if (*a == "normalized") {
        c.tx_anchor = TxAnchor::normalized();
      } else {
        throw ValidationError("tx_anchor", "unknown preset (expected table1 or normalized)");
      }
    } else {
      static constexpr const char* kAnchor[] = {"power_w", "radius_m", "carrier_hz",
                                                "freq_exponent"};
      check_keys(*a, "tx_anchor", kAnchor);
      TxAnchor t = TxAnchor::table1();
      t.power_w = number(*a, "power_w", "tx_anchor", t.power_w);
      t.radius_m = number(*a, "radius_m", "tx_anchor", t.radius_m);
      t.carrier_hz = number(*a, "carrier_hz", "tx_anchor", t.carrier_hz);
      t.freq_exponent = number(*a, "freq_exponent", "tx_anchor", t.freq_exponent);
      c.tx_anchor = t;
    }
  }

  if (auto o = doc.find("overheads"); o != doc.end()) {
    static constexpr const char* kOh[] = {"s1", "x2"};
    check_keys(*o, "overheads", kOh);
    c.overheads.s1 = number(*o, "s1", "overheads", c.overheads.s1);
    c.overheads.x2 = number(*o, "x2", "overheads", c.overheads.x2);
  }

  validate(c);
  return c;
}

/// Parses and validates a JSON config document.
inline ScenarioConfig load_scenario(const std::string& source) {
  // Blank text counts as an empty document.
  if (source.find_first_not_of(" \t\r\n") == std::string::npos)
    return scenario_from_json(json::object());
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
  return scenario_from_json(doc);
}

/// Full (defaults expanded) JSON form; loads back to an equal config.
inline json to_json(const ScenarioConfig& c) {
  json j;
  if (const auto* central = std::get_if<Central>(&c.architecture)) {
    j["architecture"] = {{"type", "central"}, {"n_small", central->n_small}};
  } else {
    j["architecture"] = {{"type", "distribution"},
                         {"k_cluster", std::get<Distribution>(c.architecture).k_cluster}};
  }
  j["band_hz"] = c.band.carrier_hz;
  if (c.macro) j["macro"] = detail::cell_to_json(*c.macro);
  j["small"] = detail::cell_to_json(c.small);
  j["alpha"] = c.path_loss_alpha;
  j["tx_anchor"] = {{"power_w", c.tx_anchor.power_w},
                    {"radius_m", c.tx_anchor.radius_m},
                    {"carrier_hz", c.tx_anchor.carrier_hz},
                    {"freq_exponent", c.tx_anchor.freq_exponent}};
  j["overheads"] = {{"s1", c.overheads.s1}, {"x2", c.overheads.x2}};
  return j;
}

inline std::string serialize(const ScenarioConfig& c) { return to_json(c).dump(2); }

}  // namespace bhnet
