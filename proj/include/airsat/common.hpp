#pragma once

#include <cmath>
#include <numbers>

namespace airsat {

inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
inline constexpr double kBoltzmann = 1.380649e-23;     // J/K
inline constexpr double kPi = std::numbers::pi;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// per-km^2 <-> per-m^2 (config files carry densities per km^2)
inline double per_km2_to_per_m2(double d) { return d * 1e-6; }
inline double per_m2_to_per_km2(double d) { return d * 1e6; }

inline double square(double x) { return x * x; }

// x^n for small integer n, exact sign handling for negative n
inline double int_pow(double x, int n) {
  if (n < 0) return 1.0 / int_pow(x, -n);
  double acc = 1.0;
  while (n > 0) {
    if (n & 1) acc *= x;
    x *= x;
    n >>= 1;
  }
  return acc;
}

}  // namespace airsat
