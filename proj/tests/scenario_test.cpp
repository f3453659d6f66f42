#include <random>
#include <string>

#include <gtest/gtest.h>

#include "bhnet/scenario.hpp"

namespace bhnet {
namespace {

TEST(LoadScenario, FillsDefaultsForMinimalCentral) {
  const auto c = load_scenario(R"({"architecture": {"type": "central", "n_small": 100}})");
  ASSERT_TRUE(c.is_central());
  EXPECT_EQ(std::get<Central>(c.architecture).n_small, 100);
  EXPECT_DOUBLE_EQ(c.path_loss_alpha, 3.2);
  EXPECT_DOUBLE_EQ(c.band.carrier_hz, 5.8e9);
  ASSERT_TRUE(c.macro.has_value());
  EXPECT_DOUBLE_EQ(c.macro->bandwidth_hz, 1e8);
  EXPECT_DOUBLE_EQ(c.small.bandwidth_hz, 1e8);
  EXPECT_EQ(c.macro->spectrum_eff, SpectrumEffSource(FixedSe{5.0}));
  EXPECT_DOUBLE_EQ(c.macro->radius_m, 500.0);
  EXPECT_DOUBLE_EQ(c.small.radius_m, 50.0);
  EXPECT_DOUBLE_EQ(c.overheads.s1, 0.10);
  EXPECT_DOUBLE_EQ(c.overheads.x2, 0.04);
  EXPECT_EQ(c.tx_anchor, TxAnchor::table1());
}

TEST(LoadScenario, EmptyDocumentMissesArchitecture) {
  for (const char* doc : {"{}", "", "  \n"}) {
    try {
      load_scenario(doc);
      FAIL() << "expected ValidationError for '" << doc << "'";
    } catch (const ValidationError& e) {
      EXPECT_EQ(e.field(), "architecture");
      EXPECT_NE(std::string(e.what()).find("architecture missing"), std::string::npos);
    }
  }
}

TEST(LoadScenario, OverheadOutOfRange) {
  try {
    load_scenario(R"({"architecture": {"type": "central", "n_small": 1},
                      "overheads": {"s1": 1.5}})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "overheads.s1");
  }
}

TEST(LoadScenario, NamesOffendingField) {
  try {
    load_scenario(R"({"architecture": {"type": "distribution", "k_cluster": 3},
                      "small": {"bandwidth_hz": -1}})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "small.bandwidth_hz");
  }
}

TEST(LoadScenario, RejectsUnknownKeys) {
  EXPECT_THROW(load_scenario(R"({"architecture": {"type": "central", "n_small": 1}, "x": 1})"),
               ValidationError);
  EXPECT_THROW(load_scenario(R"({"architecture": {"type": "central", "n_small": 1},
                                 "small": {"power_curve": {"a": 1, "c": 2}}})"),
               ValidationError);
}

TEST(LoadScenario, MalformedTextIsParseError) {
  EXPECT_THROW(load_scenario("{\"architecture\": "), ParseError);
  EXPECT_THROW(load_scenario("not json"), ParseError);
}

TEST(LoadScenario, ArchitectureRules) {
  EXPECT_THROW(load_scenario(R"({"architecture": {"type": "distribution", "k_cluster": 0}})"),
               ValidationError);
  EXPECT_THROW(load_scenario(R"({"architecture": {"type": "central", "n_small": -1}})"),
               ValidationError);
  EXPECT_THROW(load_scenario(R"({"architecture": {"type": "central", "n_small": 2.5}})"),
               ValidationError);
  EXPECT_THROW(load_scenario(R"({"architecture": {"type": "ring", "n_small": 2}})"),
               ValidationError);
  EXPECT_THROW(load_scenario(R"({"architecture": {"type": "distribution", "k_cluster": 2},
                                 "macro": {}})"),
               ValidationError);
  const auto d = load_scenario(R"({"architecture": {"type": "distribution", "k_cluster": 4}})");
  EXPECT_FALSE(d.macro.has_value());
}

TEST(LoadScenario, AnchorPresetsAndVariants) {
  auto c = load_scenario(R"({"architecture": {"type": "central", "n_small": 1},
                             "tx_anchor": "normalized",
                             "small": {"spectrum_eff": {"shannon_edge": {"calibration_se": 4}},
                                       "embodied": {"absolute": {"init_j": 1, "maint_j": 2}}}})");
  EXPECT_EQ(c.tx_anchor, TxAnchor::normalized());
  EXPECT_EQ(c.small.spectrum_eff, SpectrumEffSource(ShannonEdgeSe{4.0, 50.0}));
  EXPECT_EQ(c.small.embodied, EmbodiedRule(EmbodiedAbsolute{1.0, 2.0}));
  EXPECT_THROW(load_scenario(R"({"architecture": {"type": "central", "n_small": 1},
                                 "tx_anchor": "bogus"})"),
               ValidationError);
  EXPECT_THROW(load_scenario(R"({"architecture": {"type": "central", "n_small": 1},
                                 "small": {"embodied": {"fraction_of_total": 1.0}}})"),
               ValidationError);
}

TEST(DefaultTable1, MacroAndSmall) {
  const auto macro = default_table1(kBand5_8GHz, CellClass::Macro);
  EXPECT_EQ(macro.power_curve, (PowerCurve{21.45, 354.44}));
  EXPECT_DOUBLE_EQ(macro.lifetime_s, 10 * 3.1536e7);
  EXPECT_EQ(macro.embodied, EmbodiedRule(EmbodiedAbsolute{75e9, 10e9}));

  const auto small = default_table1(kBand60GHz, CellClass::Small);
  EXPECT_EQ(small.power_curve, (PowerCurve{7.84, 71.50}));
  EXPECT_DOUBLE_EQ(small.lifetime_s, 5 * 3.1536e7);
  EXPECT_EQ(small.embodied, EmbodiedRule(EmbodiedFraction{0.20}));

  EXPECT_EQ(default_table1(kBand28GHz, CellClass::Macro), macro);
}

// Random documents over the full schema, some fields deliberately invalid.
nlohmann::json random_document(std::mt19937_64& rng, bool allow_invalid) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pos = [&](double lo, double hi) {
    const double v = lo + (hi - lo) * u(rng);
    return allow_invalid && u(rng) < 0.05 ? -v : v;
  };
  auto cell = [&] {
    auto c = nlohmann::json::object();
    if (u(rng) < 0.7) c["bandwidth_hz"] = pos(1e6, 1e9);
    if (u(rng) < 0.7) c["radius_m"] = pos(1, 1000);
    if (u(rng) < 0.5) c["lifetime_s"] = pos(1, 1e9);
    if (u(rng) < 0.5) {
      c["spectrum_eff"] = u(rng) < 0.5
                              ? nlohmann::json{{"fixed", pos(0, 10)}}
                              : nlohmann::json{{"shannon_edge",
                                                {{"calibration_se", pos(0.1, 10)},
                                                 {"ref_radius_m", pos(1, 200)}}}};
    }
    if (u(rng) < 0.5) c["power_curve"] = {{"a", pos(0.1, 30)}, {"b_w", pos(1, 500)}};
    if (u(rng) < 0.5) {
      c["embodied"] = u(rng) < 0.5
                          ? nlohmann::json{{"absolute", {{"init_j", pos(0, 1e11)},
                                                         {"maint_j", pos(0, 1e11)}}}}
                          : nlohmann::json{{"fraction_of_total", pos(0.01, allow_invalid ? 1.5 : 0.99)}};
    }
    return c;
  };
  nlohmann::json d;
  const bool central = u(rng) < 0.5;
  const auto count = static_cast<std::int64_t>(u(rng) * 200) - (allow_invalid ? 5 : 0);
  if (central) {
    d["architecture"] = {{"type", "central"}, {"n_small", count}};
    if (u(rng) < 0.5) d["macro"] = cell();
  } else {
    d["architecture"] = {{"type", "distribution"}, {"k_cluster", std::max<std::int64_t>(count, allow_invalid ? count : 1)}};
  }
  if (u(rng) < 0.5) d["small"] = cell();
  if (u(rng) < 0.5) d["band_hz"] = pos(1e9, 1e11);
  if (u(rng) < 0.5) d["alpha"] = pos(2, 5);
  if (u(rng) < 0.3) {
    d["tx_anchor"] = {{"power_w", pos(1, 50)}, {"radius_m", pos(10, 1000)},
                      {"carrier_hz", pos(1e9, 1e11)}, {"freq_exponent", pos(0.5, 3)}};
  }
  if (u(rng) < 0.5) d["overheads"] = {{"s1", pos(0, allow_invalid ? 1.2 : 0.5)}, {"x2", pos(0, 0.5)}};
  return d;
}

TEST(ScenarioProperty, SerializeRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto doc = random_document(rng, false);
    const ScenarioConfig c = scenario_from_json(doc);
    const ScenarioConfig back = load_scenario(serialize(c));
    ASSERT_EQ(back, c) << doc.dump();
  }
}

TEST(ScenarioProperty, ValidationIsTotal) {
  std::mt19937_64 rng(11);
  int rejected = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto doc = random_document(rng, true);
    try {
      const ScenarioConfig c = scenario_from_json(doc);
      EXPECT_NO_THROW(validate(c)) << doc.dump();
    } catch (const ValidationError& e) {
      EXPECT_FALSE(std::string(e.what()).empty());
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
}

}  // namespace
}  // namespace bhnet
