#include "airsat/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace airsat {

void HopConfig::validate() const {
  if (!(tx_power_w > 0.0))
    throw std::domain_error("HopConfig: tx_power_w must be > 0");
  if (!(carrier_freq_hz > 0.0))
    throw std::domain_error("HopConfig: carrier_freq_hz must be > 0");
  if (!(illumination_coeff > 0.0))
    throw std::domain_error("HopConfig: illumination_coeff must be > 0");
  if (!(dish_diameter_m > 0.0))
    throw std::domain_error("HopConfig: dish_diameter_m must be > 0");
  if (!(extra_loss > 0.0 && extra_loss <= 1.0))
    throw std::domain_error("HopConfig: extra_loss must be in (0, 1]");
  if (nakagami_m < 1)
    throw std::domain_error("HopConfig: nakagami_m must be an integer >= 1");
  if (!(nakagami_omega > 0.0))
    throw std::domain_error("HopConfig: nakagami_omega must be > 0");
  if (!(noise_w > 0.0))
    throw std::domain_error("HopConfig: noise_w must be > 0");
  if (!(sinr_threshold > 0.0))
    throw std::domain_error("HopConfig: sinr_threshold must be > 0");
}

double antenna_gain(const HopConfig& cfg) {
  return cfg.illumination_coeff *
         square(kPi * cfg.dish_diameter_m * cfg.carrier_freq_hz /
                kSpeedOfLight);
}

double path_loss(const HopConfig& cfg, double distance_m) {
  if (!(distance_m > 0.0))
    throw std::domain_error("path_loss: distance must be > 0");
  return cfg.extra_loss *
         square(kSpeedOfLight / (4.0 * kPi * cfg.carrier_freq_hz)) /
         square(distance_m);
}

double sample_nakagami_power(int m, double omega, Rng& rng) {
  std::gamma_distribution<double> gamma(static_cast<double>(m),
                                        omega / static_cast<double>(m));
  return gamma(rng);
}

double nakagami_power_cdf(int m, double omega, double h) {
  if (h <= 0.0) return 0.0;
  const double x = static_cast<double>(m) * h / omega;
  // P(m, x) = 1 - e^-x * sum_{k<m} x^k/k!  (integer m)
  double term = 1.0, tail = 1.0;
  for (int k = 1; k < m; ++k) {
    term *= x / k;
    tail += term;
  }
  return 1.0 - std::exp(-x) * tail;
}

double sinr(const HopConfig& cfg, double signal_distance_m, double signal_gain,
            std::span<const Interferer> interferers) {
  const double g = antenna_gain(cfg);
  const double signal =
      cfg.tx_power_w * g * signal_gain * path_loss(cfg, signal_distance_m);
  double interference = 0.0;
  for (const auto& t : interferers)
    interference += cfg.tx_power_w * g * t.gain * path_loss(cfg, t.distance_m);
  return signal / (interference + cfg.noise_w);
}

double thermal_noise_w(double temperature_k, double bandwidth_hz) {
  return kBoltzmann * temperature_k * bandwidth_hz;
}

}  // namespace airsat
