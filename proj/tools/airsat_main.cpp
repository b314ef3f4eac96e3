// Command-line front end: single-point evaluation, Monte Carlo runs,
// parameter sweeps, and analytic-vs-simulation validation.
//
// Exit codes: 0 ok, 1 validation tolerance exceeded, 2 invalid config or
// usage, 3 numerical failure.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "airsat/scenario.hpp"
#include "airsat/simcore.hpp"

namespace {

using airsat::ConnectivityResult;
using airsat::ScenarioConfig;
using json = nlohmann::json;

struct Options {
  std::string config_path;
  std::string sweep_var;
  std::string sweep_values;
  std::string out_path;
  std::string format = "csv";
  std::string emit_config_path;
  double tol = 0.02;
  std::optional<std::uint64_t> seed;
};

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  out << text;
}

json estimate_json(const airsat::ErrorBar& e, double mean, long trials) {
  return json{{"mean", mean},
              {"stderr", e.std_error},
              {"ci95", {e.ci_low, e.ci_high}},
              {"trials", trials}};
}

json result_json(const ConnectivityResult& r, const ScenarioConfig& sc) {
  json j;
  j["method"] = r.method == ConnectivityResult::Method::analytic
                    ? "analytic"
                    : "simulation";
  if (r.method == ConnectivityResult::Method::analytic) {
    j["p1"] = r.p1;
    j["p2"] = r.p2;
    j["p_overall"] = r.p_overall;
  } else {
    if (r.p1_err) j["p1"] = estimate_json(*r.p1_err, r.p1, r.trials);
    if (r.p2_err) j["p2"] = estimate_json(*r.p2_err, r.p2, r.trials);
    if (r.overall_err)
      j["p_overall"] = estimate_json(*r.overall_err, r.p_overall, r.trials);
  }
  j["config"] = airsat::to_json(sc);
  return j;
}

struct SweepVariable {
  const char* name;
  void (*apply)(ScenarioConfig&, double);
};

const SweepVariable kSweepVariables[] = {
    {"av_parent_density",
     [](ScenarioConfig& sc, double v) {
       sc.deployment.av_parent_density_per_m2 = airsat::per_km2_to_per_m2(v);
     }},
    {"hardcore_distance",
     [](ScenarioConfig& sc, double v) {
       sc.deployment.hardcore_distance_m = v;
     }},
    {"gu_density",
     [](ScenarioConfig& sc, double v) {
       sc.deployment.gu_density_per_m2 = airsat::per_km2_to_per_m2(v);
     }},
    {"sinr_threshold_1",
     [](ScenarioConfig& sc, double v) {
       sc.hop1.sinr_threshold = airsat::db_to_linear(v);
     }},
    {"sinr_threshold_2",
     [](ScenarioConfig& sc, double v) {
       sc.hop2.sinr_threshold = airsat::db_to_linear(v);
     }},
};

const SweepVariable& find_sweep_variable(const std::string& name) {
  for (const auto& v : kSweepVariables)
    if (name == v.name) return v;
  throw airsat::ConfigError(
      "sweep-var", "unknown sweep variable '" + name +
                       "'; expected one of av_parent_density, "
                       "hardcore_distance, gu_density, sinr_threshold_1, "
                       "sinr_threshold_2");
}

std::vector<double> parse_sweep_values(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw airsat::ConfigError("sweep-values",
                                "cannot parse sweep value '" + item + "'");
    }
  }
  if (values.empty())
    throw airsat::ConfigError("sweep-values", "sweep values must be nonempty");
  // is_sorted with a non-strict comparator rejects equal neighbours, so these
  // test for strict monotonicity.
  const bool inc = std::is_sorted(values.begin(), values.end(),
                                  std::less_equal<double>());
  const bool dec = std::is_sorted(values.begin(), values.end(),
                                  std::greater_equal<double>());
  if (!(inc || dec))
    throw airsat::ConfigError("sweep-values",
                              "sweep values must be strictly monotone");
  return values;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

int cmd_analytic(const Options& opt) {
  ScenarioConfig sc = airsat::load_config(opt.config_path);
  auto r = airsat::analytic_connectivity(sc);
  write_output(opt.out_path, result_json(r, sc).dump(2) + "\n");
  return 0;
}

int cmd_simulate(const Options& opt) {
  ScenarioConfig sc = airsat::load_config(opt.config_path);
  if (opt.seed) sc.sim.master_seed = *opt.seed;
  auto r = airsat::simulate_overall(sc, sc.sim);
  write_output(opt.out_path, result_json(r, sc).dump(2) + "\n");
  return 0;
}

int cmd_sweep(const Options& opt) {
  ScenarioConfig base = airsat::load_config(opt.config_path);
  if (opt.seed) base.sim.master_seed = *opt.seed;
  if (opt.sweep_var.empty() || opt.sweep_values.empty())
    throw airsat::ConfigError("sweep-var",
                              "sweep requires --sweep-var and --sweep-values");
  const SweepVariable& var = find_sweep_variable(opt.sweep_var);
  const std::vector<double> values = parse_sweep_values(opt.sweep_values);

  struct Row {
    double value;
    ConnectivityResult ana, sim;
  };
  std::vector<Row> rows;
  for (double v : values) {
    ScenarioConfig sc = base;
    var.apply(sc, v);
    sc.validate();
    Row row;
    row.value = v;
    row.ana = airsat::analytic_connectivity(sc);
    row.sim = airsat::simulate_overall(sc, sc.sim);
    rows.push_back(row);
  }

  std::ostringstream os;
  if (opt.format == "csv") {
    os << "sweep_var,value,p1_ana,p2_ana,pov_ana,p1_sim,p1_ci95_halfwidth,"
          "p2_sim,p2_ci95_halfwidth,pov_sim\n";
    for (const auto& r : rows) {
      os << opt.sweep_var << ',' << format_double(r.value) << ','
         << format_double(r.ana.p1) << ',' << format_double(r.ana.p2) << ','
         << format_double(r.ana.p_overall) << ',' << format_double(r.sim.p1)
         << ',' << format_double(1.96 * r.sim.p1_err->std_error) << ','
         << format_double(r.sim.p2) << ','
         << format_double(1.96 * r.sim.p2_err->std_error) << ','
         << format_double(r.sim.p_overall) << '\n';
    }
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"sweep_var", opt.sweep_var},
                     {"value", r.value},
                     {"p1_ana", r.ana.p1},
                     {"p2_ana", r.ana.p2},
                     {"pov_ana", r.ana.p_overall},
                     {"p1_sim", r.sim.p1},
                     {"p1_ci95_halfwidth", 1.96 * r.sim.p1_err->std_error},
                     {"p2_sim", r.sim.p2},
                     {"p2_ci95_halfwidth", 1.96 * r.sim.p2_err->std_error},
                     {"pov_sim", r.sim.p_overall}});
    }
    os << arr.dump(2) << "\n";
  }
  write_output(opt.out_path, os.str());
  return 0;
}

int cmd_validate(const Options& opt) {
  ScenarioConfig sc = airsat::load_config(opt.config_path);
  if (opt.seed) sc.sim.master_seed = *opt.seed;
  auto ana = airsat::analytic_connectivity(sc);
  auto sim = airsat::simulate_overall(sc, sc.sim);
  const double d1 = std::abs(ana.p1 - sim.p1);
  const double d2 = std::abs(ana.p2 - sim.p2);
  const bool pass = d1 <= opt.tol && d2 <= opt.tol;
  json j = {{"tol", opt.tol},
            {"pass", pass},
            {"hop1", {{"analytic", ana.p1}, {"simulated", sim.p1},
                      {"abs_diff", d1}}},
            {"hop2", {{"analytic", ana.p2}, {"simulated", sim.p2},
                      {"abs_diff", d2}}},
            {"overall", {{"analytic", ana.p_overall},
                         {"simulated", sim.p_overall},
                         {"abs_diff", std::abs(ana.p_overall - sim.p_overall)}}},
            {"config", airsat::to_json(sc)}};
  write_output(opt.out_path, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-hop ground-air-satellite connectivity: closed-form model "
               "and Monte Carlo cross-validation"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed_value = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* sub, bool with_sim_flags) {
    sub->add_option("--config", opt.config_path, "scenario config file (INI)")
        ->required();
    sub->add_option("--out", opt.out_path, "output path (default: stdout)");
    sub->add_option("--emit-config", opt.emit_config_path,
                    "write the fully-resolved config back as INI");
    if (with_sim_flags)
      sub->add_option("--seed", seed_value, "override sim.seed")
          ->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* analytic = app.add_subcommand("analytic", "closed-form result");
  add_common(analytic, false);
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo result");
  add_common(simulate, true);
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep (CSV/JSON)");
  add_common(sweep, true);
  sweep->add_option("--sweep-var", opt.sweep_var,
                    "one of av_parent_density, hardcore_distance, gu_density, "
                    "sinr_threshold_1, sinr_threshold_2");
  sweep->add_option("--sweep-values", opt.sweep_values,
                    "comma-separated, strictly monotone values");
  sweep->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  CLI::App* validate =
      app.add_subcommand("validate", "analytic vs simulation check");
  add_common(validate, true);
  validate->add_option("--tol", opt.tol, "max |analytic - simulated| per hop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (seed_set) opt.seed = seed_value;

  try {
    if (!opt.emit_config_path.empty()) {
      ScenarioConfig sc = airsat::load_config(opt.config_path);
      if (opt.seed) sc.sim.master_seed = *opt.seed;
      std::ofstream out(opt.emit_config_path, std::ios::binary);
      if (!out)
        throw std::runtime_error("cannot open " + opt.emit_config_path);
      out << airsat::to_ini(sc);
    }
    if (analytic->parsed()) return cmd_analytic(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (validate->parsed()) return cmd_validate(opt);
  } catch (const airsat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const airsat::QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what()
              << " (best estimate " << e.best_estimate << ", error bound "
              << e.error_bound << ")\n";
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
