#pragma once

#include <span>
#include <vector>

#include "airsat/common.hpp"
#include "airsat/rng.hpp"

namespace airsat {

// Radio parameters of one hop. All linear units: powers in watts, threshold
// as a linear SINR ratio (converted from dB at config ingestion).
struct HopConfig {
  double tx_power_w = 1.0;
  double carrier_freq_hz = 2e9;
  double illumination_coeff = 0.6;
  double dish_diameter_m = 0.5;
  double extra_loss = 1.0;  // atmospheric / rain attenuation factor, <= 1
  int nakagami_m = 3;       // integer shape; non-integer rejected at parse
  double nakagami_omega = 1.0;
  double noise_w = 1e-13;
  double sinr_threshold = 1.0;
  double beamwidth_coeff = 1.0;  // used by hop 2 only

  void validate() const;  // throws std::domain_error
};

// Receiver antenna gain iota*(pi*D*f/c)^2.
double antenna_gain(const HopConfig& cfg);

// Free-space power attenuation l*(c/(4*pi*f))^2 / r^2.
double path_loss(const HopConfig& cfg, double distance_m);

// One draw of the Nakagami-m channel power gain: Gamma(shape=m, scale=omega/m).
double sample_nakagami_power(int m, double omega, Rng& rng);

// CDF of the power gain (regularized lower incomplete gamma at m*h/omega).
double nakagami_power_cdf(int m, double omega, double h);

struct Interferer {
  double distance_m;
  double gain;
};

// Received SINR for a reference link against a co-channel interferer set.
double sinr(const HopConfig& cfg, double signal_distance_m, double signal_gain,
            std::span<const Interferer> interferers);

// Convenience: thermal noise power k_B*T*B.
double thermal_noise_w(double temperature_k, double bandwidth_hz);

}  // namespace airsat
