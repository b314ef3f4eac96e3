#include "airsat/analytic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace airsat {

double r_dot(int hop_index, const ShellGeometry& shell,
             double density_per_m2) {
  if (!(density_per_m2 >= 0.0))
    throw std::domain_error("r_dot: density must be >= 0");
  if (hop_index == 1)
    return kPi * density_per_m2 * shell.ground_radius() / shell.av_radius();
  if (hop_index == 2)
    return kPi * density_per_m2 * shell.av_radius() / shell.sat_radius();
  throw std::domain_error("r_dot: hop_index must be 1 or 2");
}

double s_dot(const HopConfig& cfg, double r0_m) {
  if (!(r0_m > 0.0)) throw std::domain_error("s_dot: r0 must be > 0");
  return 16.0 * cfg.nakagami_m * cfg.sinr_threshold * cfg.noise_w *
         square(r0_m) /
         (cfg.nakagami_omega * cfg.tx_power_w * cfg.illumination_coeff *
          cfg.extra_loss * square(cfg.dish_diameter_m));
}

namespace {

// b * integral over u in [r_min^2/b, r_max^2/b] of 1 - (1 + 1/u)^-m.
double exclusion_integral(double b, int m, const CapAnnulus& cap,
                          const QuadratureSpec& spec) {
  if (b <= 0.0) return 0.0;
  const double lo = square(cap.r_min_m) / b;
  const double hi = square(cap.r_max_m) / b;
  return b * integrate(
                 [m](double u) { return 1.0 - int_pow(u / (1.0 + u), m); },
                 lo, hi, spec);
}

}  // namespace

double epsilon(double theta, double r0_m, int m, const CapAnnulus& cap,
               const QuadratureSpec& spec) {
  if (!(theta > 0.0)) throw std::domain_error("epsilon: theta must be > 0");
  if (!(r0_m > 0.0)) throw std::domain_error("epsilon: r0 must be > 0");
  return exclusion_integral(theta * square(r0_m), m, cap, spec);
}

double epsilon_deriv(int l, double theta, double r0_m, int m,
                     const CapAnnulus& cap, const QuadratureSpec& spec) {
  if (l < 1) throw std::domain_error("epsilon_deriv: l must be >= 1");
  if (!(theta > 0.0))
    throw std::domain_error("epsilon_deriv: theta must be > 0");
  const double b = theta * square(r0_m);
  const double lo = square(cap.r_min_m) / b;
  const double hi = square(cap.r_max_m) / b;
  const double integral = integrate(
      [l, m](double u) {
        const double t = 1.0 + 1.0 / u;
        return int_pow(1.0 / u, l) * int_pow(t, -(m + l));
      },
      lo, hi, spec);
  return binom(m + l - 1, l) * b * integral;
}

double epsilon_of_s(double s, const HopConfig& cfg, const CapAnnulus& cap,
                    const QuadratureSpec& spec) {
  if (!(s >= 0.0)) throw std::domain_error("epsilon_of_s: s must be >= 0");
  // b = s * P * G * (omega/m) * l * (c/(4 pi f))^2; at s = m*theta/(omega*P*G*L(r0))
  // this is theta*r0^2.
  const double b = s * cfg.tx_power_w * antenna_gain(cfg) *
                   (cfg.nakagami_omega / cfg.nakagami_m) * cfg.extra_loss *
                   square(kSpeedOfLight / (4.0 * kPi * cfg.carrier_freq_hz));
  return exclusion_integral(b, cfg.nakagami_m, cap, spec);
}

double laplace_interference(double s, const HopConfig& cfg,
                            const CapAnnulus& cap, const ShellGeometry& shell,
                            double interferer_density_per_m2,
                            const QuadratureSpec& spec) {
  const double rd = r_dot(cap.hop_index, shell, interferer_density_per_m2);
  return std::exp(-rd * epsilon_of_s(s, cfg, cap, spec));
}

PropositionTerms make_terms(const HopConfig& cfg, const CapAnnulus& cap,
                            const ShellGeometry& shell,
                            double interferer_density_per_m2, double r0_m,
                            const QuadratureSpec& spec) {
  PropositionTerms t;
  t.reference_distance_m = r0_m;
  t.nakagami_m = cfg.nakagami_m;
  t.s_dot = s_dot(cfg, r0_m);
  t.r_dot = r_dot(cap.hop_index, shell, interferer_density_per_m2);
  t.epsilon = epsilon(cfg.sinr_threshold, r0_m, cfg.nakagami_m, cap, spec);
  t.epsilon_l.reserve(cfg.nakagami_m - 1);
  for (int l = 1; l < cfg.nakagami_m; ++l)
    t.epsilon_l.push_back(
        epsilon_deriv(l, cfg.sinr_threshold, r0_m, cfg.nakagami_m, cap, spec));
  return t;
}

double conditional_success(const PropositionTerms& t) {
  const int m = t.nakagami_m;
  // x_l arguments of the complete Bell polynomial.
  std::vector<double> x(m, 0.0);  // x[l-1] for l = 1..m-1
  if (m > 1) {
    x[0] = t.s_dot + t.r_dot * t.epsilon_l[0];
    for (int l = 2; l < m; ++l) x[l - 1] = t.r_dot * t.epsilon_l[l - 1];
  }
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    for (const auto& part : partitions_of(k)) {
      double term = 1.0;
      for (auto [l, c] : part.multiplicities) {
        term *= int_pow(x[l - 1], c);
        for (int i = 2; i <= c; ++i) term /= i;  // 1/c_l!
      }
      sum += term;
    }
  }
  const double p = std::exp(-t.s_dot - t.r_dot * t.epsilon) * sum;
  if (p < -1e-9 || p > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "conditional_success: result " << p
       << " outside [0,1]; formula inconsistency";
    throw std::logic_error(os.str());
  }
  return std::min(1.0, std::max(0.0, p));
}

double conditional_success(const HopConfig& cfg, const CapAnnulus& cap,
                           const ShellGeometry& shell,
                           double interferer_density_per_m2, double r0_m,
                           const QuadratureSpec& spec) {
  return conditional_success(
      make_terms(cfg, cap, shell, interferer_density_per_m2, r0_m, spec));
}

double average_success(const HopConfig& cfg, const CapAnnulus& cap,
                       const ShellGeometry& shell,
                       double interferer_density_per_m2,
                       const QuadratureSpec& spec) {
  const double p = integrate(
      [&](double r0) {
        return conditional_success(cfg, cap, shell, interferer_density_per_m2,
                                   r0, spec) *
               distance_pdf(cap, r0);
      },
      cap.r_min_m, cap.r_max_m, spec);
  if (p < -1e-9 || p > 1.0 + 1e-9)
    throw std::logic_error("average_success: result outside [0,1]");
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace airsat
