#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "airsat/rng.hpp"

namespace airsat {

// Point-process parameters for ground users and aerial relays.
struct DeploymentConfig {
  double gu_density_per_m2 = 50e-6;
  double gu_tx_probability = 0.05;
  double av_parent_density_per_m2 = 5e-6;
  double hardcore_distance_m = 100.0;

  double tx_gu_density() const { return gu_tx_probability * gu_density_per_m2; }
  double effective_av_density() const;  // parent density * retention

  void validate() const;  // throws std::domain_error
};

// Points on a spherical cap centered on +z, stored as unit directions.
struct CapPointSet {
  std::vector<Eigen::Vector3d> directions;
  double shell_radius_m = 0.0;
  double cap_angle_rad = 0.0;

  std::size_t size() const { return directions.size(); }
  bool empty() const { return directions.empty(); }
  Eigen::Vector3d position(std::size_t i) const {
    return shell_radius_m * directions[i];
  }
};

// Fraction of parents surviving type-II hard-core thinning,
// (1 - exp(-lambda*pi*d^2)) / (lambda*pi*d^2), equal to 1 at d = 0.
double retention_probability(double parent_density_per_m2, double hardcore_m);

// Homogeneous Poisson process on the cap: Poisson count with mean
// density*area, positions uniform (cos(polar) uniform, azimuth uniform).
CapPointSet sample_hppp_on_cap(double density_per_m2, double shell_radius_m,
                               double cap_angle_rad, Rng& rng);

// Type-II hard-core thinning with explicitly supplied marks: a point survives
// iff no other point within chord distance < hardcore has a smaller mark
// (mark ties broken by index).
CapPointSet matern_type2_thin_with_marks(const CapPointSet& parents,
                                         const std::vector<double>& marks,
                                         double hardcore_m);

// Same, drawing independent uniform marks from rng.
CapPointSet matern_type2_thin(const CapPointSet& parents, double hardcore_m,
                              Rng& rng);

// Independent Bernoulli(p) thinning.
CapPointSet thin_by_activity(const CapPointSet& points, double p, Rng& rng);

// Keep the points whose polar angle is <= cap_angle_rad.
CapPointSet clip_to_cap(const CapPointSet& points, double cap_angle_rad);

// Hard-core process restricted to a cap without boundary bias: parents are
// drawn on a cap enlarged by the hard-core polar angle, thinned, then clipped.
CapPointSet sample_matern_on_cap(double parent_density_per_m2,
                                 double shell_radius_m, double cap_angle_rad,
                                 double hardcore_m, Rng& rng);

// Index of the chord-nearest point of avs for each point of gus; ties broken
// by the lowest index. Throws std::invalid_argument when avs is empty.
std::vector<std::size_t> nearest_association(const CapPointSet& gus,
                                             const CapPointSet& avs);

}  // namespace airsat
