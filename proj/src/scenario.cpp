#include "airsat/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace airsat {

namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

struct FlatConfig {
  // section.key -> raw value
  std::map<std::string, std::string> values;

  bool take(const std::string& key, std::string& out) {
    auto it = values.find(key);
    if (it == values.end()) return false;
    out = it->second;
    values.erase(it);
    return true;
  }
};

double parse_double(const std::string& key, const std::string& raw) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size())
      throw ConfigError(key, key + ": trailing characters in '" + raw + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(key, key + ": cannot parse '" + raw + "' as a number");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& raw) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc() || p != raw.data() + raw.size())
    throw ConfigError(key, key + ": cannot parse '" + raw + "' as u64");
  return v;
}

int parse_positive_int(const std::string& key, const std::string& raw) {
  const double v = parse_double(key, raw);
  if (v < 1.0 || v != std::floor(v))
    throw ConfigError(key, key + ": must be a positive integer, got '" + raw +
                               "'");
  return static_cast<int>(v);
}

void read_hop(FlatConfig& fc, const std::string& section, HopConfig& hop,
              bool is_hop2) {
  std::string raw;
  auto key = [&](const char* k) { return section + "." + k; };
  if (fc.take(key("power_w"), raw)) hop.tx_power_w = parse_double(key("power_w"), raw);
  if (fc.take(key("freq_hz"), raw)) hop.carrier_freq_hz = parse_double(key("freq_hz"), raw);
  if (fc.take(key("illumination"), raw)) hop.illumination_coeff = parse_double(key("illumination"), raw);
  if (fc.take(key("antenna_diameter_m"), raw)) hop.dish_diameter_m = parse_double(key("antenna_diameter_m"), raw);
  if (fc.take(key("extra_loss"), raw)) hop.extra_loss = parse_double(key("extra_loss"), raw);
  if (fc.take(key("nakagami_m"), raw)) {
    const double m = parse_double(key("nakagami_m"), raw);
    if (m < 1.0 || m != std::floor(m))
      throw ConfigError(key("nakagami_m"),
                        key("nakagami_m") +
                            ": must be a positive integer (the closed form "
                            "requires integer fading shape), got '" +
                            raw + "'");
    hop.nakagami_m = static_cast<int>(m);
  }
  if (fc.take(key("nakagami_omega"), raw)) hop.nakagami_omega = parse_double(key("nakagami_omega"), raw);
  if (fc.take(key("noise_w"), raw)) hop.noise_w = parse_double(key("noise_w"), raw);
  if (fc.take(key("sinr_threshold_db"), raw))
    hop.sinr_threshold = db_to_linear(parse_double(key("sinr_threshold_db"), raw));
  if (is_hop2) {
    if (fc.take(key("beamwidth_coeff"), raw))
      hop.beamwidth_coeff = parse_double(key("beamwidth_coeff"), raw);
  }
}

void check(bool ok, const char* key, const std::string& msg) {
  if (!ok) throw ConfigError(key, std::string(key) + ": " + msg);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void ScenarioConfig::validate() const {
  check(geometry.earth_radius_m > 0, "geometry.earth_radius_m", "must be > 0");
  check(geometry.av_altitude_m > 0 &&
            geometry.av_altitude_m < geometry.sat_altitude_m,
        "geometry.av_altitude_m", "requires 0 < av altitude < sat altitude");
  check(deployment.gu_density_per_m2 >= 0, "ground_users.density_per_km2",
        "must be >= 0");
  check(deployment.gu_tx_probability >= 0 && deployment.gu_tx_probability <= 1,
        "ground_users.tx_probability", "must be in [0, 1]");
  check(deployment.av_parent_density_per_m2 > 0,
        "aerial.parent_density_per_km2", "must be > 0");
  check(deployment.hardcore_distance_m >= 0, "aerial.hardcore_distance_m",
        "must be >= 0");
  const char* names[2] = {"hop1", "hop2"};
  for (int i = 0; i < 2; ++i) {
    const HopConfig& h = i == 0 ? hop1 : hop2;
    const std::string s = names[i];
    check(h.tx_power_w > 0, (s + ".power_w").c_str(), "must be > 0");
    check(h.carrier_freq_hz > 0, (s + ".freq_hz").c_str(), "must be > 0");
    check(h.illumination_coeff > 0, (s + ".illumination").c_str(),
          "must be > 0");
    check(h.dish_diameter_m > 0, (s + ".antenna_diameter_m").c_str(),
          "must be > 0");
    check(h.extra_loss > 0 && h.extra_loss <= 1, (s + ".extra_loss").c_str(),
          "must be in (0, 1]");
    check(h.nakagami_m >= 1, (s + ".nakagami_m").c_str(), "must be >= 1");
    check(h.nakagami_omega > 0, (s + ".nakagami_omega").c_str(),
          "must be > 0");
    check(h.noise_w > 0, (s + ".noise_w").c_str(), "must be > 0");
    check(h.sinr_threshold > 0, (s + ".sinr_threshold_db").c_str(),
          "linear threshold must be > 0");
  }
  check(hop2.beamwidth_coeff > 0, "hop2.beamwidth_coeff", "must be > 0");
  check(sim.trials >= 1, "sim.trials", "must be >= 1");
}

ScenarioConfig parse_config(std::string_view text) {
  FlatConfig fc;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "line " + std::to_string(line_no) +
                                ": expected key = value, got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty())
      throw ConfigError(key, key + ": key outside of any [section]");
    fc.values[section + "." + key] = value;
  }

  ScenarioConfig sc;
  std::string raw;
  if (fc.take("geometry.earth_radius_m", raw))
    sc.geometry.earth_radius_m = parse_double("geometry.earth_radius_m", raw);
  if (fc.take("geometry.av_altitude_m", raw))
    sc.geometry.av_altitude_m = parse_double("geometry.av_altitude_m", raw);
  if (fc.take("geometry.sat_altitude_m", raw))
    sc.geometry.sat_altitude_m = parse_double("geometry.sat_altitude_m", raw);

  if (fc.take("ground_users.density_per_km2", raw))
    sc.deployment.gu_density_per_m2 =
        per_km2_to_per_m2(parse_double("ground_users.density_per_km2", raw));
  if (fc.take("ground_users.tx_probability", raw))
    sc.deployment.gu_tx_probability =
        parse_double("ground_users.tx_probability", raw);

  if (fc.take("aerial.parent_density_per_km2", raw))
    sc.deployment.av_parent_density_per_m2 =
        per_km2_to_per_m2(parse_double("aerial.parent_density_per_km2", raw));
  if (fc.take("aerial.hardcore_distance_m", raw))
    sc.deployment.hardcore_distance_m =
        parse_double("aerial.hardcore_distance_m", raw);

  read_hop(fc, "hop1", sc.hop1, false);
  read_hop(fc, "hop2", sc.hop2, true);

  if (fc.take("sim.trials", raw))
    sc.sim.trials = parse_positive_int("sim.trials", raw);
  if (fc.take("sim.seed", raw)) sc.sim.master_seed = parse_u64("sim.seed", raw);
  if (fc.take("sim.mode", raw)) {
    if (raw == "cap_approx")
      sc.sim.mode = SimMode::cap_approx;
    else if (raw == "full_voronoi")
      sc.sim.mode = SimMode::full_voronoi;
    else
      throw ConfigError("sim.mode",
                        "sim.mode: expected cap_approx or full_voronoi, got '" +
                            raw + "'");
  }
  if (fc.take("sim.hops", raw)) {
    if (raw == "hop1")
      sc.sim.hops = HopSelect::hop1;
    else if (raw == "hop2")
      sc.sim.hops = HopSelect::hop2;
    else if (raw == "both")
      sc.sim.hops = HopSelect::both;
    else
      throw ConfigError("sim.hops",
                        "sim.hops: expected hop1, hop2 or both, got '" + raw +
                            "'");
  }
  if (fc.take("sim.threads", raw))
    sc.sim.threads = parse_positive_int("sim.threads", raw);
  if (fc.take("sim.include_out_of_cell", raw)) {
    if (raw == "true" || raw == "1")
      sc.sim.include_out_of_cell = true;
    else if (raw == "false" || raw == "0")
      sc.sim.include_out_of_cell = false;
    else
      throw ConfigError("sim.include_out_of_cell",
                        "sim.include_out_of_cell: expected true/false");
  }

  if (!fc.values.empty())
    throw ConfigError(fc.values.begin()->first,
                      fc.values.begin()->first + ": unknown key");
  sc.validate();
  return sc;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_ini(const ScenarioConfig& sc) {
  std::ostringstream os;
  os << "[geometry]\n"
     << "earth_radius_m = " << fmt(sc.geometry.earth_radius_m) << "\n"
     << "av_altitude_m = " << fmt(sc.geometry.av_altitude_m) << "\n"
     << "sat_altitude_m = " << fmt(sc.geometry.sat_altitude_m) << "\n\n";
  os << "[ground_users]\n"
     << "density_per_km2 = "
     << fmt(per_m2_to_per_km2(sc.deployment.gu_density_per_m2)) << "\n"
     << "tx_probability = " << fmt(sc.deployment.gu_tx_probability) << "\n\n";
  os << "[aerial]\n"
     << "parent_density_per_km2 = "
     << fmt(per_m2_to_per_km2(sc.deployment.av_parent_density_per_m2)) << "\n"
     << "hardcore_distance_m = " << fmt(sc.deployment.hardcore_distance_m)
     << "\n\n";
  const HopConfig* hops[2] = {&sc.hop1, &sc.hop2};
  for (int i = 0; i < 2; ++i) {
    const HopConfig& h = *hops[i];
    os << "[hop" << (i + 1) << "]\n"
       << "power_w = " << fmt(h.tx_power_w) << "\n"
       << "freq_hz = " << fmt(h.carrier_freq_hz) << "\n"
       << "illumination = " << fmt(h.illumination_coeff) << "\n"
       << "antenna_diameter_m = " << fmt(h.dish_diameter_m) << "\n"
       << "extra_loss = " << fmt(h.extra_loss) << "\n"
       << "nakagami_m = " << h.nakagami_m << "\n"
       << "nakagami_omega = " << fmt(h.nakagami_omega) << "\n"
       << "noise_w = " << fmt(h.noise_w) << "\n"
       << "sinr_threshold_db = " << fmt(linear_to_db(h.sinr_threshold))
       << "\n";
    if (i == 1) os << "beamwidth_coeff = " << fmt(h.beamwidth_coeff) << "\n";
    os << "\n";
  }
  os << "[sim]\n"
     << "trials = " << sc.sim.trials << "\n"
     << "seed = " << sc.sim.master_seed << "\n"
     << "mode = "
     << (sc.sim.mode == SimMode::cap_approx ? "cap_approx" : "full_voronoi")
     << "\n";
  return os.str();
}

nlohmann::json to_json(const ScenarioConfig& sc) {
  nlohmann::json j;
  j["geometry"] = {{"earth_radius_m", sc.geometry.earth_radius_m},
                   {"av_altitude_m", sc.geometry.av_altitude_m},
                   {"sat_altitude_m", sc.geometry.sat_altitude_m}};
  j["ground_users"] = {
      {"density_per_km2", per_m2_to_per_km2(sc.deployment.gu_density_per_m2)},
      {"tx_probability", sc.deployment.gu_tx_probability}};
  j["aerial"] = {{"parent_density_per_km2",
                  per_m2_to_per_km2(sc.deployment.av_parent_density_per_m2)},
                 {"hardcore_distance_m", sc.deployment.hardcore_distance_m}};
  const HopConfig* hops[2] = {&sc.hop1, &sc.hop2};
  for (int i = 0; i < 2; ++i) {
    const HopConfig& h = *hops[i];
    nlohmann::json hj = {{"power_w", h.tx_power_w},
                         {"freq_hz", h.carrier_freq_hz},
                         {"illumination", h.illumination_coeff},
                         {"antenna_diameter_m", h.dish_diameter_m},
                         {"extra_loss", h.extra_loss},
                         {"nakagami_m", h.nakagami_m},
                         {"nakagami_omega", h.nakagami_omega},
                         {"noise_w", h.noise_w},
                         {"sinr_threshold_db", linear_to_db(h.sinr_threshold)}};
    if (i == 1) hj["beamwidth_coeff"] = h.beamwidth_coeff;
    j[i == 0 ? "hop1" : "hop2"] = hj;
  }
  j["sim"] = {{"trials", sc.sim.trials},
              {"seed", sc.sim.master_seed},
              {"mode", sc.sim.mode == SimMode::cap_approx ? "cap_approx"
                                                          : "full_voronoi"}};
  return j;
}

CapAnnulus hop_cap(const ScenarioConfig& sc, int hop_index) {
  if (hop_index == 1)
    return hop1_cap(sc.geometry, sc.deployment.effective_av_density());
  if (hop_index == 2)
    return hop2_cap(sc.geometry,
                    beamwidth_rad(sc.hop2.carrier_freq_hz,
                                  sc.hop2.dish_diameter_m,
                                  sc.hop2.beamwidth_coeff));
  throw std::domain_error("hop_cap: hop_index must be 1 or 2");
}

double hop_interferer_density(const ScenarioConfig& sc, int hop_index) {
  if (hop_index == 1) return sc.deployment.tx_gu_density();
  if (hop_index == 2) return sc.deployment.effective_av_density();
  throw std::domain_error("hop_interferer_density: hop_index must be 1 or 2");
}

const HopConfig& hop_config(const ScenarioConfig& sc, int hop_index) {
  if (hop_index == 1) return sc.hop1;
  if (hop_index == 2) return sc.hop2;
  throw std::domain_error("hop_config: hop_index must be 1 or 2");
}

double analytic_asp(const ScenarioConfig& sc, int hop_index,
                    const QuadratureSpec& spec) {
  return average_success(hop_config(sc, hop_index), hop_cap(sc, hop_index),
                         sc.geometry, hop_interferer_density(sc, hop_index),
                         spec);
}

ConnectivityResult analytic_connectivity(const ScenarioConfig& sc,
                                         const QuadratureSpec& spec) {
  ConnectivityResult r;
  r.method = ConnectivityResult::Method::analytic;
  r.p1 = analytic_asp(sc, 1, spec);
  r.p2 = analytic_asp(sc, 2, spec);
  r.p_overall = r.p1 * r.p2;
  return r;
}

}  // namespace airsat
