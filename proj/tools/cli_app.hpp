#pragma once

// Command dispatcher for the `bhnet` tool. Kept in a header so the tests
// can run commands in-process against string streams.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bhnet/bhnet.hpp"

namespace bhnet::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kIoError = 2 };

/// Failure reading or writing a file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SI value with an engineering prefix, 6 significant digits.
inline std::string engineering(double v, const std::string& unit) {
  static constexpr struct {
    double scale;
    const char* prefix;
  } kPrefixes[] = {{1e12, "T"}, {1e9, "G"}, {1e6, "M"}, {1e3, "k"}, {1.0, ""},
                   {1e-3, "m"}, {1e-6, "u"}, {1e-9, "n"}};
  double scale = 1.0;
  const char* prefix = "";
  if (v != 0.0 && std::isfinite(v)) {
    scale = kPrefixes[std::size(kPrefixes) - 1].scale;
    prefix = kPrefixes[std::size(kPrefixes) - 1].prefix;
    for (const auto& p : kPrefixes) {
      if (std::abs(v) >= p.scale) {
        scale = p.scale;
        prefix = p.prefix;
        break;
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g %s%s", v / scale, prefix, unit.c_str());
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("cannot write " + path);
}

/// Parses `name=start:stop:step`.
inline AxisValues parse_axis_spec(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ValidationError("axis", "expected name=start:stop:step");
  const std::string name = spec.substr(0, eq);
  const auto axis = parse_axis(name);
  if (!axis) throw ValidationError("axis", "unknown axis '" + name + "'");
  std::vector<double> parts;
  std::stringstream ss(spec.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("axis", "bad number '" + item + "' in " + spec);
    }
  }
  if (parts.size() != 3) throw ValidationError("axis", "expected name=start:stop:step");
  return {*axis, arange(parts[0], parts[1], parts[2])};
}

struct Options {
  std::string config;
  std::vector<std::string> axes;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  bool to_stdout = false;
  std::string which = "all";
  std::size_t n = 100;
  double radius_m = 500.0;
  double per_cell_bps = 5.7e8;
  std::optional<std::size_t> gateway;
};

inline nlohmann::json evaluation_to_json(const ScenarioConfig& sc, const Evaluation& ev) {
  nlohmann::json j;
  j["scenario"] = to_json(sc);
  j["small_se"] = ev.small_se;
  if (sc.is_central()) j["macro_se"] = ev.macro_se;
  j["throughput"] = {{"small_up_bps", ev.throughput.small_up_bps},
                     {"small_down_bps", ev.throughput.small_down_bps},
                     {"macro_up_bps", ev.throughput.macro_up_bps},
                     {"macro_down_bps", ev.throughput.macro_down_bps},
                     {"total_up_bps", ev.throughput.total_up_bps},
                     {"total_down_bps", ev.throughput.total_down_bps},
                     {"total_bps", ev.throughput.total_bps}};
  j["energy"] = {{"per_macro_operating_j", ev.energy.per_macro_operating_j},
                 {"per_macro_embodied_j", ev.energy.per_macro_embodied_j},
                 {"per_small_operating_j", ev.energy.per_small_operating_j},
                 {"per_small_embodied_j", ev.energy.per_small_embodied_j},
                 {"system_total_j", ev.energy.system_total_j}};
  j["efficiency_bps_per_j"] = ev.result.efficiency;
  return j;
}

inline void emit(const Options& opt, const std::string& content, std::ostream& out) {
  if (opt.to_stdout) out << content;
  if (!opt.out.empty()) write_file(opt.out, content);
}

inline int cmd_eval(const Options& opt, std::ostream& out) {
  const ScenarioConfig sc = load_scenario(read_file(opt.config));
  const Evaluation ev = evaluate(sc);
  if (!opt.to_stdout) {
    out << (sc.is_central() ? "central" : "distribution") << " scenario " << opt.config << "\n";
    out << "  throughput  " << engineering(ev.result.throughput_bps, "bit/s") << " ("
        << format_sci(ev.result.throughput_bps) << " bit/s)\n";
    out << "  energy      " << engineering(ev.result.system_energy_j, "J") << " ("
        << format_sci(ev.result.system_energy_j) << " J)\n";
    out << "  efficiency  " << engineering(ev.result.efficiency, "bit/s/J") << " ("
        << format_sci(ev.result.efficiency) << " bit/s/J)\n";
  }
  emit(opt, evaluation_to_json(sc, ev).dump(2) + "\n", out);
  return kOk;
}

inline std::string render(const std::vector<SweepRow>& rows, const SweepGrid& grid,
                          const std::string& format) {
  if (format == "json") return rows_to_json(rows, grid).dump(2) + "\n";
  return rows_to_csv(rows, grid);
}

inline int cmd_sweep(const Options& opt, std::ostream& out) {
  if (opt.axes.empty() || opt.axes.size() > 2)
    throw ValidationError("axis", "sweep takes one or two --axis options");
  SweepGrid grid;
  grid.base = load_scenario(read_file(opt.config));
  grid.primary = parse_axis_spec(opt.axes[0]);
  if (opt.axes.size() == 2) grid.secondary = parse_axis_spec(opt.axes[1]);
  const auto rows = run_sweep(grid);
  if (!opt.to_stdout) {
    out << "sweep over " << axis_name(grid.primary.axis);
    if (grid.secondary) out << " x " << axis_name(grid.secondary->axis);
    out << ": " << rows.size() << " rows";
    if (!opt.out.empty()) out << " -> " << opt.out;
    out << "\n";
  }
  emit(opt, render(rows, grid, opt.format), out);
  return kOk;
}

inline int cmd_figures(const Options& opt, std::ostream& out) {
  std::vector<Figure> figs;
  if (opt.which == "all") {
    figs.assign(kAllFigures.begin(), kAllFigures.end());
  } else if (auto f = parse_figure(opt.which)) {
    figs.push_back(*f);
  } else {
    throw ValidationError("which", "unknown figure '" + opt.which + "'");
  }
  const std::string ext = opt.format == "json" ? ".json" : ".csv";
  if (!opt.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(opt.out, ec);
    if (ec) throw IoError("cannot create directory " + opt.out);
  }
  for (Figure f : figs) {
    const SweepGrid grid = figure_grid(f);
    const auto rows = run_sweep(grid);
    const std::string body = render(rows, grid, opt.format);
    if (opt.to_stdout) out << body;
    if (!opt.out.empty()) {
      const auto path = (std::filesystem::path(opt.out) / (std::string(figure_name(f)) + ext));
      write_file(path.string(), body);
      if (!opt.to_stdout) out << figure_name(f) << ": " << rows.size() << " rows -> " << path.string() << "\n";
    } else if (!opt.to_stdout) {
      out << figure_name(f) << ": " << rows.size() << " rows\n";
    }
  }
  return kOk;
}

inline int cmd_verify(std::ostream& out) {
  const Table1Report rep = table1_report();
  for (const auto& c : rep.cells) {
    char line[200];
    std::snprintf(line, sizeof line, "%-11s @ %5.1f GHz  computed %-12.6g expected %-10.6g %s",
                  c.quantity.c_str(), c.band_hz / 1e9, c.computed, c.expected,
                  c.pass ? "pass" : "FAIL");
    out << line;
    if (c.computed_exact != c.computed) {
      std::snprintf(line, sizeof line, "  (%.6g at unrounded P_TX)", c.computed_exact);
      out << line;
    }
    out << "\n";
  }
  out << rep.passed() << "/" << rep.cells.size() << " pass\n";
  return rep.all_pass() ? kOk : kInvalid;
}

inline int cmd_topology(const Options& opt, std::ostream& out) {
  if (!(opt.radius_m > 0)) throw ValidationError("radius", "must be > 0");
  if (!(opt.per_cell_bps >= 0)) throw ValidationError("per-cell-bps", "must be >= 0");
  const Placement placement = place_uniform(opt.n, opt.radius_m, opt.seed);
  nlohmann::json j;
  if (placement.positions.empty()) {
    j = {{"rng", kPlacementRng},
         {"seed", opt.seed},
         {"macro_radius_m", opt.radius_m},
         {"positions", nlohmann::json::array()},
         {"gateway_index", nullptr},
         {"parent", nlohmann::json::array()},
         {"link_load_bps", nlohmann::json::array()}};
  } else {
    GatewayRule rule = NearestToCenter{};
    if (opt.gateway) {
      if (*opt.gateway >= opt.n) throw ValidationError("gateway", "index out of range");
      rule = GatewayIndex{*opt.gateway};
    }
    const RelayTree tree = link_loads(build_relay_tree(placement, rule), opt.per_cell_bps);
    j = topology_to_json(placement, tree);
    if (!opt.to_stdout) {
      out << "topology: " << tree.size() << " SBS, gateway " << tree.gateway_index
          << ", ingress " << engineering(gateway_ingress_bps(tree), "bit/s") << ", max link "
          << engineering(max_link_load_bps(tree), "bit/s") << "\n";
    }
  }
  emit(opt, j.dump(2) + "\n", out);
  return kOk;
}

/// Runs one command line. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Backhaul throughput and energy-efficiency models for small-cell networks", "bhnet"};
  app.require_subcommand(1);
  Options opt;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "Output file (directory for figures)");
    sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--stdout", opt.to_stdout, "Write machine output to standard output");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate one scenario");
  eval->add_option("--config", opt.config, "Scenario JSON")->required();
  add_output(eval);

  auto* sweep = app.add_subcommand("sweep", "Sweep a scenario over one or two axes");
  sweep->add_option("--config", opt.config, "Base scenario JSON")->required();
  sweep->add_option("--axis", opt.axes, "name=start:stop:step; a second --axis is the curve family")
      ->required();
  add_output(sweep);

  auto* figures = app.add_subcommand("figures", "Emit the preset figure datasets");
  figures->add_option("--which", opt.which, "fig3a..fig5b or all");
  add_output(figures);

  auto* verify = app.add_subcommand("verify-table1", "Check the calibration table");

  auto* topo = app.add_subcommand("topology", "Place SBSs and build the relay tree");
  topo->add_option("--n", opt.n, "Number of SBSs");
  topo->add_option("--radius", opt.radius_m, "Macrocell radius in meters");
  topo->add_option("--seed", opt.seed, "RNG seed");
  topo->add_option("--per-cell-bps", opt.per_cell_bps, "Backhaul traffic per SBS");
  topo->add_option("--gateway", opt.gateway, "Gateway SBS index (default: nearest to center)");
  add_output(topo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInvalid;
  }

  try {
    if (eval->parsed()) return cmd_eval(opt, out);
    if (sweep->parsed()) return cmd_sweep(opt, out);
    if (figures->parsed()) return cmd_figures(opt, out);
    if (verify->parsed()) return cmd_verify(out);
    if (topo->parsed()) return cmd_topology(opt, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace bhnet::cli
