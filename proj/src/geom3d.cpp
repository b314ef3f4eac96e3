#include "airsat/geom3d.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace airsat {

void ShellGeometry::validate() const {
  if (!(earth_radius_m > 0.0))
    throw std::domain_error("ShellGeometry: earth_radius_m must be > 0");
  if (!(av_altitude_m > 0.0 && av_altitude_m < sat_altitude_m))
    throw std::domain_error(
        "ShellGeometry: requires 0 < av_altitude_m < sat_altitude_m");
}

namespace {

void check_cap(const CapAnnulus& cap, const char* who) {
  if (!(cap.r_min_m > 0.0 && cap.r_max_m > cap.r_min_m)) {
    std::ostringstream os;
    os << who << ": degenerate cap (r_min=" << cap.r_min_m
       << " m, r_max=" << cap.r_max_m
       << " m); the configuration is physically inconsistent";
    throw std::domain_error(os.str());
  }
}

}  // namespace

double cap_height(const CapAnnulus& cap) {
  return (square(cap.r_max_m) - square(cap.r_min_m)) / (2.0 * cap.rx_radius_m);
}

double cap_area(const CapAnnulus& cap) {
  return 2.0 * kPi * cap.tx_shell_radius_m * cap_height(cap);
}

double cap_boundary_angle(const CapAnnulus& cap) {
  // 1 - cos(phi) = h/R  =>  phi = 2 asin(sqrt(h/(2R)))
  return 2.0 * std::asin(std::sqrt(cap_height(cap) /
                                   (2.0 * cap.tx_shell_radius_m)));
}

CapAnnulus hop1_cap(const ShellGeometry& shell, double av_density_per_m2) {
  shell.validate();
  if (!(av_density_per_m2 > 0.0))
    throw std::domain_error("hop1_cap: av_density_per_m2 must be > 0");
  const double re = shell.ground_radius();
  const double ra = shell.av_radius();
  // Cap area = mean cell area 1/lambda; height via the hat theorem.
  const double h1 = 1.0 / (2.0 * kPi * av_density_per_m2 * re);
  CapAnnulus cap;
  cap.r_min_m = shell.av_altitude_m;
  cap.r_max_m = std::sqrt(square(shell.av_altitude_m) + 2.0 * h1 * ra);
  cap.tx_shell_radius_m = re;
  cap.rx_radius_m = ra;
  cap.hop_index = 1;
  check_cap(cap, "hop1_cap");
  return cap;
}

CapAnnulus hop2_cap(const ShellGeometry& shell, double beamwidth) {
  shell.validate();
  const double ra = shell.av_radius();
  const double rs = shell.sat_radius();
  if (!(beamwidth > 0.0))
    throw std::domain_error("hop2_cap: beamwidth must be > 0");
  const double sin_edge = rs * std::sin(beamwidth);
  if (!(sin_edge < ra)) {
    std::ostringstream os;
    os << "hop2_cap: beamwidth " << beamwidth
       << " rad misses the relay shell; maximum admissible beamwidth is "
       << std::asin(ra / rs) << " rad";
    throw std::domain_error(os.str());
  }
  CapAnnulus cap;
  cap.r_min_m = shell.sat_altitude_m - shell.av_altitude_m;
  cap.r_max_m =
      rs * std::cos(beamwidth) - std::sqrt(square(ra) - square(sin_edge));
  cap.tx_shell_radius_m = ra;
  cap.rx_radius_m = rs;
  cap.hop_index = 2;
  check_cap(cap, "hop2_cap");
  return cap;
}

double beamwidth_rad(double freq_hz, double dish_diameter_m, double kappa) {
  if (!(freq_hz > 0.0 && dish_diameter_m > 0.0 && kappa >= 0.0))
    throw std::domain_error("beamwidth_rad: invalid arguments");
  const double degrees = kSpeedOfLight * kappa / (freq_hz * dish_diameter_m);
  return degrees * kPi / 180.0;
}

namespace {
void check_range(const CapAnnulus& cap, double r, const char* who) {
  if (!(r >= cap.r_min_m && r <= cap.r_max_m)) {
    std::ostringstream os;
    os << who << ": r=" << r << " m outside [" << cap.r_min_m << ", "
       << cap.r_max_m << "]";
    throw std::domain_error(os.str());
  }
}
}  // namespace

double distance_pdf(const CapAnnulus& cap, double r_m) {
  check_range(cap, r_m, "distance_pdf");
  return 2.0 * r_m / (square(cap.r_max_m) - square(cap.r_min_m));
}

double distance_cdf(const CapAnnulus& cap, double r_m) {
  check_range(cap, r_m, "distance_cdf");
  return (square(r_m) - square(cap.r_min_m)) /
         (square(cap.r_max_m) - square(cap.r_min_m));
}

double sample_distance(const CapAnnulus& cap, double uniform01) {
  return std::sqrt(square(cap.r_min_m) +
                   uniform01 * (square(cap.r_max_m) - square(cap.r_min_m)));
}

double polar_angle_to_distance(double r_tx_m, double r_rx_m, double phi_rad) {
  const double s = std::sin(0.5 * phi_rad);
  return std::sqrt(square(r_rx_m - r_tx_m) +
                   4.0 * r_tx_m * r_rx_m * s * s);
}

double distance_to_polar_angle(double r_tx_m, double r_rx_m, double dist_m) {
  const double num = square(dist_m) - square(r_rx_m - r_tx_m);
  const double s2 = num / (4.0 * r_tx_m * r_rx_m);
  if (s2 < 0.0) return 0.0;  // below the radial gap: coincident directions
  return 2.0 * std::asin(std::min(1.0, std::sqrt(s2)));
}

}  // namespace airsat
