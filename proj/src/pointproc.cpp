#include "airsat/pointproc.hpp"

#include <cmath>
#include <stdexcept>

#include "airsat/common.hpp"

namespace airsat {

void DeploymentConfig::validate() const {
  if (!(gu_density_per_m2 >= 0.0))
    throw std::domain_error("DeploymentConfig: gu_density must be >= 0");
  if (!(gu_tx_probability >= 0.0 && gu_tx_probability <= 1.0))
    throw std::domain_error(
        "DeploymentConfig: gu_tx_probability must be in [0, 1]");
  if (!(av_parent_density_per_m2 >= 0.0))
    throw std::domain_error(
        "DeploymentConfig: av_parent_density must be >= 0");
  if (!(hardcore_distance_m >= 0.0))
    throw std::domain_error(
        "DeploymentConfig: hardcore_distance must be >= 0");
}

double DeploymentConfig::effective_av_density() const {
  return av_parent_density_per_m2 *
         retention_probability(av_parent_density_per_m2, hardcore_distance_m);
}

double retention_probability(double parent_density_per_m2, double hardcore_m) {
  if (!(parent_density_per_m2 > 0.0))
    throw std::domain_error("retention_probability: density must be > 0");
  if (!(hardcore_m >= 0.0))
    throw std::domain_error("retention_probability: hardcore must be >= 0");
  if (hardcore_m == 0.0) return 1.0;
  const double x = parent_density_per_m2 * kPi * square(hardcore_m);
  return -std::expm1(-x) / x;
}

CapPointSet sample_hppp_on_cap(double density_per_m2, double shell_radius_m,
                               double cap_angle_rad, Rng& rng) {
  if (!(density_per_m2 >= 0.0))
    throw std::domain_error("sample_hppp_on_cap: density must be >= 0");
  CapPointSet out;
  out.shell_radius_m = shell_radius_m;
  out.cap_angle_rad = cap_angle_rad;
  // 1 - cos(phi) kept in deficit form; caps here can be microradians deep.
  const double deficit = 2.0 * square(std::sin(0.5 * cap_angle_rad));
  const double area = 2.0 * kPi * square(shell_radius_m) * deficit;
  const double mean = density_per_m2 * area;
  if (mean <= 0.0) return out;

  std::poisson_distribution<int> count(mean);
  const int n = count(rng);
  out.directions.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double d = uniform01(rng) * deficit;  // 1 - cos(polar)
    const double az = 2.0 * kPi * uniform01(rng);
    const double z = 1.0 - d;
    const double s = std::sqrt(d * (2.0 - d));  // sin(polar), cancellation-free
    out.directions.emplace_back(s * std::cos(az), s * std::sin(az), z);
  }
  return out;
}

CapPointSet matern_type2_thin_with_marks(const CapPointSet& parents,
                                         const std::vector<double>& marks,
                                         double hardcore_m) {
  if (marks.size() != parents.size())
    throw std::invalid_argument("matern_type2_thin: one mark per parent");
  CapPointSet out;
  out.shell_radius_m = parents.shell_radius_m;
  out.cap_angle_rad = parents.cap_angle_rad;
  if (hardcore_m == 0.0) {
    out.directions = parents.directions;
    return out;
  }
  const double hc2 = square(hardcore_m / parents.shell_radius_m);
  const std::size_t n = parents.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < n && keep; ++j) {
      if (j == i) continue;
      const double d2 =
          (parents.directions[i] - parents.directions[j]).squaredNorm();
      if (d2 < hc2 &&
          (marks[j] < marks[i] || (marks[j] == marks[i] && j < i)))
        keep = false;
    }
    if (keep) out.directions.push_back(parents.directions[i]);
  }
  return out;
}

CapPointSet matern_type2_thin(const CapPointSet& parents, double hardcore_m,
                              Rng& rng) {
  std::vector<double> marks(parents.size());
  for (auto& m : marks) m = uniform01(rng);
  return matern_type2_thin_with_marks(parents, marks, hardcore_m);
}

CapPointSet thin_by_activity(const CapPointSet& points, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("thin_by_activity: p must be in [0, 1]");
  CapPointSet out;
  out.shell_radius_m = points.shell_radius_m;
  out.cap_angle_rad = points.cap_angle_rad;
  for (const auto& dir : points.directions)
    if (uniform01(rng) < p) out.directions.push_back(dir);
  return out;
}

CapPointSet clip_to_cap(const CapPointSet& points, double cap_angle_rad) {
  CapPointSet out;
  out.shell_radius_m = points.shell_radius_m;
  out.cap_angle_rad = cap_angle_rad;
  const double min_z = std::cos(cap_angle_rad);
  for (const auto& dir : points.directions)
    if (dir.z() >= min_z) out.directions.push_back(dir);
  return out;
}

CapPointSet sample_matern_on_cap(double parent_density_per_m2,
                                 double shell_radius_m, double cap_angle_rad,
                                 double hardcore_m, Rng& rng) {
  const double guard = hardcore_m / shell_radius_m;
  CapPointSet parents = sample_hppp_on_cap(parent_density_per_m2,
                                           shell_radius_m,
                                           cap_angle_rad + guard, rng);
  CapPointSet kept = matern_type2_thin(parents, hardcore_m, rng);
  return clip_to_cap(kept, cap_angle_rad);
}

std::vector<std::size_t> nearest_association(const CapPointSet& gus,
                                             const CapPointSet& avs) {
  if (avs.empty())
    throw std::invalid_argument("nearest_association: no relays to assign to");
  std::vector<std::size_t> assignment(gus.size());
  for (std::size_t g = 0; g < gus.size(); ++g) {
    const Eigen::Vector3d p = gus.position(g);
    std::size_t best = 0;
    double best_d2 = (avs.position(0) - p).squaredNorm();
    for (std::size_t a = 1; a < avs.size(); ++a) {
      const double d2 = (avs.position(a) - p).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = a;
      }
    }
    assignment[g] = best;
  }
  return assignment;
}

}  // namespace airsat
