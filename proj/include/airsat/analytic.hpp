#pragma once

#include <optional>
#include <vector>

#include "airsat/channel.hpp"
#include "airsat/geom3d.hpp"
#include "airsat/numerics.hpp"

namespace airsat {

// Precomputed ingredients of the conditional success probability at one
// reference distance: the noise exponent s_dot = s*sigma^2, the interference
// prefactor r_dot, the exclusion integral epsilon, and the higher-order
// integrals epsilon_l (l = 1..m-1) feeding the partition expansion.
struct PropositionTerms {
  double s_dot = 0.0;
  double r_dot = 0.0;
  double epsilon = 0.0;
  std::vector<double> epsilon_l;
  double reference_distance_m = 0.0;
  int nakagami_m = 1;
};

struct ErrorBar {
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Per-hop average success probabilities and their product.
struct ConnectivityResult {
  enum class Method { analytic, simulation };
  double p1 = 0.0;
  double p2 = 0.0;
  double p_overall = 0.0;
  Method method = Method::analytic;
  long trials = 0;  // simulation only
  std::optional<ErrorBar> p1_err, p2_err, overall_err;
};

// Interference prefactor pi*lambda*R_tx/R_rx of the given hop.
double r_dot(int hop_index, const ShellGeometry& shell, double density_per_m2);

// Noise exponent 16*m*theta*sigma^2*r0^2 / (omega*P*iota*l*D^2); equals
// s*sigma^2 with s = m*theta/(omega*P*G*L(r0)).
double s_dot(const HopConfig& cfg, double r0_m);

// Exclusion integral over gamma = r^2 in [r_min^2, r_max^2] of
// 1 - (1 + b/gamma)^-m, for b = theta*r0^2. Evaluated after rescaling
// u = gamma/b so the integrand is O(1) regardless of the cap scale.
double epsilon(double theta, double r0_m, int m, const CapAnnulus& cap,
               const QuadratureSpec& spec = {});

// binom(m+l-1, l) * integral of (b/gamma)^l (1 + b/gamma)^-(m+l).
double epsilon_deriv(int l, double theta, double r0_m, int m,
                     const CapAnnulus& cap, const QuadratureSpec& spec = {});

// The s-parameterized exclusion integral with b = s * P*G*(omega/m)*l*(c/4/pi/f)^2;
// reduces to epsilon(theta, r0, ...) at s = m*theta/(omega*P*G*L(r0)).
double epsilon_of_s(double s, const HopConfig& cfg, const CapAnnulus& cap,
                    const QuadratureSpec& spec = {});

// Laplace transform of the aggregate interference, exp(-r_dot * epsilon(s)).
double laplace_interference(double s, const HopConfig& cfg,
                            const CapAnnulus& cap, const ShellGeometry& shell,
                            double interferer_density_per_m2,
                            const QuadratureSpec& spec = {});

PropositionTerms make_terms(const HopConfig& cfg, const CapAnnulus& cap,
                            const ShellGeometry& shell,
                            double interferer_density_per_m2, double r0_m,
                            const QuadratureSpec& spec = {});

// Success probability of a link at fixed reference distance:
// exp(-s_dot - r_dot*epsilon) times the complete Bell-polynomial sum over
// partitions of k = 0..m-1 with x_1 = s_dot + r_dot*eps_1, x_l = r_dot*eps_l.
// A result outside [-1e-9, 1+1e-9] signals a formula bug and throws.
double conditional_success(const PropositionTerms& terms);
double conditional_success(const HopConfig& cfg, const CapAnnulus& cap,
                           const ShellGeometry& shell,
                           double interferer_density_per_m2, double r0_m,
                           const QuadratureSpec& spec = {});

// Average success probability: conditional success integrated against the
// cap distance density.
double average_success(const HopConfig& cfg, const CapAnnulus& cap,
                       const ShellGeometry& shell,
                       double interferer_density_per_m2,
                       const QuadratureSpec& spec = {});

}  // namespace airsat
