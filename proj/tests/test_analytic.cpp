#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "airsat/analytic.hpp"
#include "airsat/scenario.hpp"
#include "airsat/simcore.hpp"
#include "oracles.hpp"

using namespace airsat;

namespace {

const ShellGeometry kShell{6.371e6, 1000.0, 600e3};
const QuadratureSpec kTight{1e-14, 1e-12, 4000};

HopConfig hop1_cfg() {
  HopConfig cfg;
  cfg.tx_power_w = 0.2;
  cfg.carrier_freq_hz = 2e9;
  cfg.illumination_coeff = 0.6;
  cfg.dish_diameter_m = 0.5;
  cfg.extra_loss = 1.0;
  cfg.nakagami_m = 3;
  cfg.nakagami_omega = 1.0;
  cfg.noise_w = 1e-13;
  cfg.sinr_threshold = 1.0;
  return cfg;
}

// s at which the s-parameterized exclusion integral reduces to
// epsilon(theta, r0): s = m*theta/(omega*P*G*L(r0)).
double s_reference(const HopConfig& cfg, double r0) {
  return cfg.nakagami_m * cfg.sinr_threshold /
         (cfg.nakagami_omega * cfg.tx_power_w * antenna_gain(cfg) *
          path_loss(cfg, r0));
}

}  // namespace

TEST_CASE("r_dot: zero density, pinned value, shell ordering") {
  CHECK(r_dot(1, kShell, 0.0) == 0.0);
  CHECK(r_dot(1, kShell, 5e-5) ==
        doctest::Approx(1.5705498113638240e-4).epsilon(1e-12));
  const double lam = 4.6272e-6;
  CHECK(r_dot(2, kShell, lam) < kPi * lam);
  CHECK_THROWS_AS(r_dot(3, kShell, 1e-6), std::domain_error);
}

TEST_CASE("s_dot: noiseless limit, quadratic scaling, channel composition") {
  HopConfig cfg = hop1_cfg();
  cfg.noise_w = 0.0;
  CHECK(s_dot(cfg, 1000.0) == 0.0);

  cfg = hop1_cfg();
  CHECK(s_dot(cfg, 2000.0) / s_dot(cfg, 1000.0) ==
        doctest::Approx(4.0).epsilon(1e-12));

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  for (int i = 0; i < 100; ++i) {
    HopConfig c = hop1_cfg();
    c.tx_power_w = u(rng);
    c.illumination_coeff = 0.2 * u(rng);
    c.dish_diameter_m = 0.3 * u(rng);
    c.extra_loss = 1.0 / (1.0 + 0.2 * u(rng));
    c.nakagami_m = 1 + (i % 4);
    c.nakagami_omega = u(rng);
    c.noise_w = 1e-13 * u(rng);
    c.sinr_threshold = u(rng);
    const double r0 = 500.0 * u(rng);
    const double via_channel =
        c.nakagami_m * c.sinr_threshold * c.noise_w /
        (c.nakagami_omega * c.tx_power_w * antenna_gain(c) * path_loss(c, r0));
    CHECK(s_dot(c, r0) == doctest::Approx(via_channel).epsilon(1e-12));
  }
}

TEST_CASE("epsilon: bounds and the m=1 logarithmic closed form") {
  const CapAnnulus cap = hop1_cap(kShell, 4.6272e-6);
  const double span = square(cap.r_max_m) - square(cap.r_min_m);

  CHECK(epsilon(1e-12, 1016.0, 3, cap) <= span * 1e-6);
  for (double theta : {0.1, 1.0, 10.0}) {
    const double e = epsilon(theta, 1016.0, 3, cap);
    CHECK(e >= 0.0);
    CHECK(e <= span);
  }

  for (double theta : {0.25, 1.0, 3.0}) {
    const double r0 = 1016.0;
    const double b = theta * square(r0);
    const double closed =
        b * std::log((square(cap.r_max_m) + b) / (square(cap.r_min_m) + b));
    CHECK(epsilon(theta, r0, 1, cap, kTight) ==
          doctest::Approx(closed).epsilon(1e-8));
  }
}

TEST_CASE("epsilon: binomial-series closed form for higher m") {
  for (const CapAnnulus& cap :
       {hop1_cap(kShell, 4.6272e-6), hop2_cap(kShell, 4.7554e-4)}) {
    for (int m : {2, 3, 5}) {
      for (double theta : {0.31622776601683794, 1.0}) {
        const double r0 = 0.5 * (cap.r_min_m + cap.r_max_m);
        const double b = theta * square(r0);
        const double closed = oracles::epsilon_closed_form(
            b, m, square(cap.r_min_m), square(cap.r_max_m));
        CHECK(epsilon(theta, r0, m, cap, kTight) ==
              doctest::Approx(closed).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("epsilon_deriv: nonnegative, l=1 m=1 closed form, series oracle") {
  const CapAnnulus cap = hop1_cap(kShell, 4.6272e-6);
  const double r0 = 1016.0;
  const double theta = 1.0;
  const double b = theta * square(r0);

  for (int l = 1; l <= 4; ++l)
    CHECK(epsilon_deriv(l, theta, r0, 3, cap) >= 0.0);

  {
    // l=1, m=1: b * [ln(gamma+b) + b/(gamma+b)] at the limits
    const double hi = square(cap.r_max_m) + b, lo = square(cap.r_min_m) + b;
    const double closed = b * (std::log(hi / lo) + b / hi - b / lo);
    CHECK(epsilon_deriv(1, theta, r0, 1, cap, kTight) ==
          doctest::Approx(closed).epsilon(1e-8));
  }

  for (int m : {1, 3})
    for (int l = 1; l <= 3; ++l) {
      const double closed = oracles::epsilon_deriv_closed_form(
          b, l, m, square(cap.r_min_m), square(cap.r_max_m));
      CHECK(epsilon_deriv(l, theta, r0, m, cap, kTight) ==
            doctest::Approx(closed).epsilon(1e-8));
    }
}

TEST_CASE("epsilon_of_s reduces to epsilon at the reference s") {
  const CapAnnulus cap = hop1_cap(kShell, 4.6272e-6);
  HopConfig cfg = hop1_cfg();
  for (double r0 : {1001.0, 1016.0, 1030.0}) {
    const double s = s_reference(cfg, r0);
    CHECK(epsilon_of_s(s, cfg, cap, kTight) ==
          doctest::Approx(epsilon(cfg.sinr_threshold, r0, cfg.nakagami_m, cap,
                                  kTight))
              .epsilon(1e-10));
  }
  CHECK(epsilon_of_s(0.0, cfg, cap) == 0.0);
}

TEST_CASE("epsilon_deriv is the scaled s-derivative of epsilon_of_s") {
  const CapAnnulus cap = hop1_cap(kShell, 4.6272e-6);
  HopConfig cfg = hop1_cfg();
  const double r0 = 1016.0;
  const double s = s_reference(cfg, r0);
  // d^l/ds^l via g(u) = eps(s*u):  eps^(l)(s) = g^(l)(1)/s^l, so
  // eps_dot^(l) = (-1)^(l+1) (s^l/l!) eps^(l)(s) = (-1)^(l+1) g^(l)(1)/l!.
  double factorial = 1.0;
  for (int l = 1; l <= 3; ++l) {
    factorial *= l;
    const double g_l = derivative_high_order(
        [&](double u) { return epsilon_of_s(s * u, cfg, cap, kTight); }, 1.0,
        l, 0.04);
    const double via_derivative = ((l % 2 == 1) ? 1.0 : -1.0) * g_l / factorial;
    const double direct =
        epsilon_deriv(l, cfg.sinr_threshold, r0, cfg.nakagami_m, cap, kTight);
    CHECK(direct == doctest::Approx(via_derivative).epsilon(1e-4));
  }
}

TEST_CASE("laplace_interference: unit at zero, monotone decreasing") {
  const CapAnnulus cap = hop1_cap(kShell, 4.6272e-6);
  HopConfig cfg = hop1_cfg();
  const double lam = 2.5e-6;
  CHECK(laplace_interference(0.0, cfg, cap, kShell, lam) == 1.0);
  double prev = 1.0;
  const double s1 = s_reference(cfg, 1016.0);
  for (double scale : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double v = laplace_interference(scale * s1, cfg, cap, kShell, lam);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("laplace_interference: matches the Monte Carlo functional") {
  const CapAnnulus cap = hop1_cap(kShell, 4.6272e-6);
  HopConfig cfg = hop1_cfg();
  const double lam = 2.5e-6;
  const double s = s_reference(cfg, 1016.0);

  Rng rng(777);
  const double angle = cap_boundary_angle(cap);
  const double g = antenna_gain(cfg);
  const int trials = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CapPointSet pts =
        sample_hppp_on_cap(lam, cap.tx_shell_radius_m, angle, rng);
    double interference = 0.0;
    for (const auto& dir : pts.directions) {
      const double deficit = 1.0 - dir.z();
      const double dist =
          std::sqrt(square(cap.rx_radius_m - cap.tx_shell_radius_m) +
                    2.0 * cap.tx_shell_radius_m * cap.rx_radius_m * deficit);
      interference +=
          cfg.tx_power_w * g *
          sample_nakagami_power(cfg.nakagami_m, cfg.nakagami_omega, rng) *
          path_loss(cfg, dist);
    }
    const double v = std::exp(-s * interference);
    sum += v;
    sum2 += v * v;
  }
  const double mc = sum / trials;
  const double se =
      std::sqrt((sum2 / trials - mc * mc) / static_cast<double>(trials));
  const double analytic = laplace_interference(s, cfg, cap, kShell, lam);
  CHECK(std::abs(analytic - mc) < 3.0 * se);
}

TEST_CASE("conditional_success: Rayleigh closed form and threshold limits") {
  const CapAnnulus cap = hop1_cap(kShell, 4.6272e-6);
  HopConfig cfg = hop1_cfg();
  cfg.nakagami_m = 1;
  const double lam = 2.5e-6;
  const double r0 = 1016.0;

  const PropositionTerms t = make_terms(cfg, cap, kShell, lam, r0);
  CHECK(conditional_success(t) ==
        doctest::Approx(std::exp(-t.s_dot - t.r_dot * t.epsilon))
            .epsilon(1e-12));

  HopConfig low = hop1_cfg();
  low.sinr_threshold = 1e-9;
  CHECK(conditional_success(low, cap, kShell, lam, r0) >= 1.0 - 1e-6);
  HopConfig high = hop1_cfg();
  high.sinr_threshold = 1e9;
  CHECK(conditional_success(high, cap, kShell, lam, r0) <= 1e-6);
}

TEST_CASE("conditional_success: matches differentiation of the transform") {
  // partition expansion vs sum_k (-s)^k/k! d^k/ds^k [e^{-s sigma^2} L(s)]
  const CapAnnulus cap = hop1_cap(kShell, 4.6272e-6);
  std::mt19937_64 seeds(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int m : {2, 3}) {
    for (int point = 0; point < 20; ++point) {
      HopConfig cfg = hop1_cfg();
      cfg.nakagami_m = m;
      cfg.sinr_threshold = 0.2 + 2.0 * u(seeds);
      cfg.nakagami_omega = 0.5 + u(seeds);
      cfg.noise_w = 3e-13 * u(seeds);
      const double lam = 5e-6 * (0.2 + u(seeds));
      const double r0 =
          cap.r_min_m + (cap.r_max_m - cap.r_min_m) * u(seeds);

      const double direct = conditional_success(cfg, cap, kShell, lam, r0, kTight);

      const double s = s_reference(cfg, r0);
      const double sigma2 = cfg.noise_w;
      auto transform = [&](double uu) {
        return std::exp(-s * uu * sigma2) *
               laplace_interference(s * uu, cfg, cap, kShell, lam, kTight);
      };
      double by_derivatives = transform(1.0);
      double factorial = 1.0;
      for (int k = 1; k < m; ++k) {
        factorial *= k;
        const double dk = derivative_high_order(transform, 1.0, k, 0.04);
        by_derivatives += ((k % 2 == 0) ? 1.0 : -1.0) * dk / factorial;
      }
      CHECK(direct == doctest::Approx(by_derivatives).epsilon(1e-4));
    }
  }
}

TEST_CASE("conditional_success: agrees with Monte Carlo at a fixed distance") {
  ScenarioConfig sc;  // reference defaults
  const CapAnnulus cap = hop_cap(sc, 1);
  const double r0 = 0.5 * (cap.r_min_m + cap.r_max_m);
  const double analytic = conditional_success(
      sc.hop1, cap, sc.geometry, hop_interferer_density(sc, 1), r0);

  TrialPlan plan;
  plan.trials = 100000;
  plan.master_seed = 4242;
  const Estimate est = simulate_hop1_at(sc, r0, plan);
  CHECK(std::abs(est.mean - analytic) < 3.0 * est.std_error);
}

TEST_CASE("average_success: limits, bounds, threshold monotonicity") {
  ScenarioConfig sc;
  const CapAnnulus cap = hop_cap(sc, 1);
  const double lam = hop_interferer_density(sc, 1);

  HopConfig easy = sc.hop1;
  easy.sinr_threshold = 1e-9;
  CHECK(average_success(easy, cap, sc.geometry, lam) >= 1.0 - 1e-6);

  // the average lies between the extremes of the conditional success
  const double asp = average_success(sc.hop1, cap, sc.geometry, lam);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i <= 64; ++i) {
    const double r0 =
        cap.r_min_m + (cap.r_max_m - cap.r_min_m) * i / 64.0;
    const double p = conditional_success(sc.hop1, cap, sc.geometry, lam, r0);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  CHECK(asp >= lo - 1e-9);
  CHECK(asp <= hi + 1e-9);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    HopConfig a = sc.hop1;
    a.sinr_threshold = 0.2 + 3.0 * u(rng);
    HopConfig b = a;
    b.sinr_threshold *= 2.0;
    CHECK(average_success(b, cap, sc.geometry, lam) <
          average_success(a, cap, sc.geometry, lam));
  }
}

TEST_CASE("overall connectivity: product structure") {
  ScenarioConfig sc;
  const ConnectivityResult r = analytic_connectivity(sc);
  CHECK(r.p_overall == r.p1 * r.p2);
  CHECK(r.p_overall <= std::min(r.p1, r.p2));
  CHECK(r.p1 >= 0.0);
  CHECK(r.p1 <= 1.0);
  CHECK(r.p2 >= 0.0);
  CHECK(r.p2 <= 1.0);

  ScenarioConfig hopeless = sc;
  hopeless.hop1.sinr_threshold = 1e12;
  const ConnectivityResult z = analytic_connectivity(hopeless);
  CHECK(z.p1 <= 1e-9);
  CHECK(z.p_overall <= 1e-9);
}

TEST_CASE("monotonicity: noise power decreases both hops") {
  ScenarioConfig sc;
  for (int hop : {1, 2}) {
    ScenarioConfig noisy = sc;
    (hop == 1 ? noisy.hop1.noise_w : noisy.hop2.noise_w) *= 1e4;
    CHECK(analytic_asp(noisy, hop) < analytic_asp(sc, hop));
  }
}

TEST_CASE("hop 2 is bit-identical across ground-user densities") {
  ScenarioConfig a;
  ScenarioConfig b = a;
  b.deployment.gu_density_per_m2 = 7.7 * a.deployment.gu_density_per_m2;
  CHECK(analytic_asp(a, 2) == analytic_asp(b, 2));
  CHECK(analytic_asp(a, 1) != analytic_asp(b, 1));
}

TEST_CASE("hop 1 improves with relay density at fixed interferer density") {
  ScenarioConfig sc;
  double prev = 0.0;
  for (double lam0_km2 : {1.0, 2.0, 5.0, 10.0, 20.0}) {
    ScenarioConfig c = sc;
    c.deployment.av_parent_density_per_m2 = per_km2_to_per_m2(lam0_km2);
    const double p = analytic_asp(c, 1);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("carrier frequency cancels except through the hop-2 beam") {
  ScenarioConfig sc;
  ScenarioConfig f1 = sc;
  f1.hop1.carrier_freq_hz *= 3.7;
  CHECK(analytic_asp(f1, 1) == analytic_asp(sc, 1));

  ScenarioConfig f2 = sc;
  f2.hop2.carrier_freq_hz *= 2.0;  // narrower beam: different cap
  CHECK(std::abs(analytic_asp(f2, 2) - analytic_asp(sc, 2)) > 1e-6);
}
