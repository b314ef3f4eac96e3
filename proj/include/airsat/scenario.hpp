#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "airsat/analytic.hpp"
#include "airsat/channel.hpp"
#include "airsat/geom3d.hpp"
#include "airsat/pointproc.hpp"
#include "airsat/sim_types.hpp"

#include <nlohmann/json_fwd.hpp>

namespace airsat {

// Configuration error with the offending key, for field-level messages.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_, const std::string& msg)
      : std::runtime_error(msg), key(std::move(key_)) {}
  std::string key;
};

// Full scenario: geometry, deployment, the two hops, and the trial plan.
// Defaults reproduce the bundled reference configuration.
struct ScenarioConfig {
  ShellGeometry geometry{6371000.0, 1000.0, 600000.0};
  DeploymentConfig deployment{50e-6, 0.05, 5e-6, 100.0};
  HopConfig hop1{0.2, 2e9, 0.6, 0.5, 1.0, 3, 1.0, 1e-13, 1.0, 0.0};
  HopConfig hop2{4.0, 20e9, 0.6, 0.55, 1.0, 3, 1.0, 2e-14,
                 0.31622776601683794, 1.0};
  TrialPlan sim{};

  void validate() const;  // throws ConfigError with the failing key
};

// Flat-key INI: sections [geometry], [ground_users], [aerial], [hop1],
// [hop2], [sim]; densities per km^2 and thresholds in dB at this boundary.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

// Canonical serialization; re-ingesting the output reproduces the exact
// same scenario (full double precision).
std::string to_ini(const ScenarioConfig& sc);
nlohmann::json to_json(const ScenarioConfig& sc);

// Derived per-hop quantities.
CapAnnulus hop_cap(const ScenarioConfig& sc, int hop_index);
double hop_interferer_density(const ScenarioConfig& sc, int hop_index);
const HopConfig& hop_config(const ScenarioConfig& sc, int hop_index);

// Closed-form per-hop average success and the two-hop product.
double analytic_asp(const ScenarioConfig& sc, int hop_index,
                    const QuadratureSpec& spec = {});
ConnectivityResult analytic_connectivity(const ScenarioConfig& sc,
                                         const QuadratureSpec& spec = {});

}  // namespace airsat
