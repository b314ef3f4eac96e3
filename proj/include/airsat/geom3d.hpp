#pragma once

#include "airsat/common.hpp"

namespace airsat {

// Earth radius plus the two altitude shells (aerial relays, satellites).
// All radial constants of the scenario live here; lengths in meters.
struct ShellGeometry {
  double earth_radius_m = 6371000.0;
  double av_altitude_m = 1000.0;
  double sat_altitude_m = 600000.0;

  double ground_radius() const { return earth_radius_m; }
  double av_radius() const { return earth_radius_m + av_altitude_m; }
  double sat_radius() const { return earth_radius_m + sat_altitude_m; }

  void validate() const;  // throws std::domain_error
};

// Spherical-cap coverage region of a receiver, parameterized by the chord
// distance r from the receiver to transmitters on their shell. The distance
// ranges over [r_min, r_max] with CDF (r^2 - r_min^2)/(r_max^2 - r_min^2).
struct CapAnnulus {
  double r_min_m = 0.0;
  double r_max_m = 0.0;
  double tx_shell_radius_m = 0.0;  // radius of the transmitter shell
  double rx_radius_m = 0.0;        // receiver distance from the Earth center
  int hop_index = 0;               // 1: ground->relay, 2: relay->satellite
};

// Cap height on the transmitter shell and the cap area (hat-theorem form).
double cap_height(const CapAnnulus& cap);
double cap_area(const CapAnnulus& cap);
// Polar angle subtended by the cap at the Earth center.
double cap_boundary_angle(const CapAnnulus& cap);

// Coverage cap of one aerial relay for ground transmitters. The cap area is
// the mean association-cell area 1/av_density.
CapAnnulus hop1_cap(const ShellGeometry& shell, double av_density_per_m2);

// Coverage cap of the satellite for aerial relays, cut by its beamwidth.
CapAnnulus hop2_cap(const ShellGeometry& shell, double beamwidth_rad);

// 3 dB beamwidth of a reflector antenna: kappa*c/(f*D) degrees, returned in
// radians. kappa is the dimensionless beamwidth coefficient.
double beamwidth_rad(double freq_hz, double dish_diameter_m, double kappa);

// Density / CDF of the transmitter-receiver distance on a cap; r must lie in
// [r_min, r_max].
double distance_pdf(const CapAnnulus& cap, double r_m);
double distance_cdf(const CapAnnulus& cap, double r_m);

// Inverse-CDF sampling of the cap distance; u in [0,1).
double sample_distance(const CapAnnulus& cap, double uniform01);

// Chord distance between points at radii R_tx, R_rx separated by polar angle
// phi, and its inverse (computed via the half-angle form, stable for small
// separations).
double polar_angle_to_distance(double r_tx_m, double r_rx_m, double phi_rad);
double distance_to_polar_angle(double r_tx_m, double r_rx_m, double dist_m);

}  // namespace airsat
