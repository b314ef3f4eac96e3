#include "airsat/simcore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace airsat {

Estimate make_estimate(long successes, long trials) {
  Estimate e;
  e.trials = trials;
  e.mean = static_cast<double>(successes) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / trials);
  e.ci_low = std::max(0.0, e.mean - 1.96 * e.std_error);
  e.ci_high = std::min(1.0, e.mean + 1.96 * e.std_error);
  return e;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("AIRSAT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

constexpr std::uint64_t kLaneHop1 = 1;
constexpr std::uint64_t kLaneHop2 = 2;

// Runs `trials` independent Bernoulli trials; trial t uses the substream
// (seed, t, lane). The success count is an order-independent sum.
Estimate run_bernoulli(int trials, int threads, std::uint64_t seed,
                       std::uint64_t lane,
                       const std::function<bool(Rng&)>& trial) {
  threads = std::min(threads, trials);
  std::atomic<long> successes{0};
  auto worker = [&](int lo, int hi) {
    long local = 0;
    for (int t = lo; t < hi; ++t) {
      Rng rng = make_stream(seed, static_cast<std::uint64_t>(t), lane);
      if (trial(rng)) ++local;
    }
    successes += local;
  };
  if (threads <= 1) {
    worker(0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int chunk = (trials + threads - 1) / threads;
    for (int i = 0; i < threads; ++i) {
      const int lo = i * chunk;
      const int hi = std::min(trials, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return make_estimate(successes.load(), trials);
}

struct HopScene {
  CapAnnulus cap;
  double cap_angle;       // polar angle of the coverage cap
  double interferer_density;
  double rx_radius;       // receiver distance from Earth center
  double tx_shell_radius;
};

HopScene make_scene(const ScenarioConfig& sc, int hop) {
  HopScene s;
  s.cap = hop_cap(sc, hop);
  s.cap_angle = cap_boundary_angle(s.cap);
  s.interferer_density = hop_interferer_density(sc, hop);
  s.rx_radius = s.cap.rx_radius_m;
  s.tx_shell_radius = s.cap.tx_shell_radius_m;
  return s;
}

// Chord distance from a transmitter direction on the shell to the receiver
// on the cap axis, via 1-z to avoid cancellation near the pole.
double distance_to_axis_receiver(const Eigen::Vector3d& dir, double tx_radius,
                                 double rx_radius) {
  const double deficit = 1.0 - dir.z();
  return std::sqrt(square(rx_radius - tx_radius) +
                   2.0 * tx_radius * rx_radius * deficit);
}

// Interference from points of a cap set toward the axis receiver, with
// independent fading on every link.
void append_interferers(const CapPointSet& pts, double rx_radius,
                        const HopConfig& cfg, Rng& rng,
                        std::vector<Interferer>& out) {
  for (const auto& dir : pts.directions) {
    const double d =
        distance_to_axis_receiver(dir, pts.shell_radius_m, rx_radius);
    out.push_back(
        {d, sample_nakagami_power(cfg.nakagami_m, cfg.nakagami_omega, rng)});
  }
}

// One cap_approx trial for hop 1: reference distance from the cap density,
// interfering transmitters as an HPPP on the coverage cap.
bool hop1_cap_trial(const ScenarioConfig& sc, const HopScene& s,
                    std::optional<double> fixed_r0, Rng& rng) {
  const double r0 =
      fixed_r0 ? *fixed_r0 : sample_distance(s.cap, uniform01(rng));
  const CapPointSet gus = sample_hppp_on_cap(
      s.interferer_density, s.tx_shell_radius, s.cap_angle, rng);
  const double h0 =
      sample_nakagami_power(sc.hop1.nakagami_m, sc.hop1.nakagami_omega, rng);
  std::vector<Interferer> interferers;
  interferers.reserve(gus.size());
  append_interferers(gus, s.rx_radius, sc.hop1, rng, interferers);
  return sinr(sc.hop1, r0, h0, interferers) > sc.hop1.sinr_threshold;
}

// One trial for hop 2: reference relay distance from the cap density,
// interfering relays as a hard-core process on the beam cap (guard band
// against boundary bias); the reference transmitter is sampled separately
// and excluded from the interferer set.
bool hop2_trial(const ScenarioConfig& sc, const HopScene& s,
                std::optional<double> fixed_r0, Rng& rng) {
  const double r0 =
      fixed_r0 ? *fixed_r0 : sample_distance(s.cap, uniform01(rng));
  const CapPointSet avs = sample_matern_on_cap(
      sc.deployment.av_parent_density_per_m2, s.tx_shell_radius, s.cap_angle,
      sc.deployment.hardcore_distance_m, rng);
  const double h0 =
      sample_nakagami_power(sc.hop2.nakagami_m, sc.hop2.nakagami_omega, rng);
  std::vector<Interferer> interferers;
  interferers.reserve(avs.size());
  append_interferers(avs, s.rx_radius, sc.hop2, rng, interferers);
  return sinr(sc.hop2, r0, h0, interferers) > sc.hop2.sinr_threshold;
}

// Full-Voronoi hop-1 trial: the typical ground user sits at the cap axis,
// relays form a hard-core process around it, service comes from the nearest
// relay and interference from the transmitting users of the same cell
// (optionally from the whole sampled region).
bool hop1_voronoi_trial(const ScenarioConfig& sc, Rng& rng) {
  const double lam_eff = sc.deployment.effective_av_density();
  const double re = sc.geometry.ground_radius();
  const double ra = sc.geometry.av_radius();
  // Region radius: 25 mean cells around the typical user; the nearest relay
  // and its whole cell fall inside with overwhelming probability.
  const double region_radius = std::sqrt(25.0 / (kPi * lam_eff));
  const double region_angle = region_radius / re;

  const CapPointSet avs = sample_matern_on_cap(
      sc.deployment.av_parent_density_per_m2, ra, region_angle,
      sc.deployment.hardcore_distance_m, rng);
  CapPointSet gus =
      sample_hppp_on_cap(sc.deployment.gu_density_per_m2, re, region_angle, rng);
  gus = thin_by_activity(gus, sc.deployment.gu_tx_probability, rng);
  if (avs.empty()) return false;  // no relay reachable: outage

  const Eigen::Vector3d ref_gu(0.0, 0.0, re);
  std::size_t serving = 0;
  double best_d2 = (avs.position(0) - ref_gu).squaredNorm();
  for (std::size_t a = 1; a < avs.size(); ++a) {
    const double d2 = (avs.position(a) - ref_gu).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      serving = a;
    }
  }
  const double r0 = std::sqrt(best_d2);
  const Eigen::Vector3d rx = avs.position(serving);

  std::vector<std::size_t> assignment;
  if (!sc.sim.include_out_of_cell) assignment = nearest_association(gus, avs);

  const double h0 =
      sample_nakagami_power(sc.hop1.nakagami_m, sc.hop1.nakagami_omega, rng);
  std::vector<Interferer> interferers;
  for (std::size_t g = 0; g < gus.size(); ++g) {
    if (!sc.sim.include_out_of_cell && assignment[g] != serving) continue;
    const double d = (gus.position(g) - rx).norm();
    interferers.push_back({d, sample_nakagami_power(sc.hop1.nakagami_m,
                                                    sc.hop1.nakagami_omega,
                                                    rng)});
  }
  return sinr(sc.hop1, r0, h0, interferers) > sc.hop1.sinr_threshold;
}

Estimate simulate_hop1_impl(const ScenarioConfig& sc, const TrialPlan& plan,
                            std::optional<double> fixed_r0) {
  const int threads = resolve_threads(plan.threads);
  if (plan.mode == SimMode::full_voronoi && !fixed_r0) {
    return run_bernoulli(plan.trials, threads, plan.master_seed, kLaneHop1,
                         [&](Rng& rng) { return hop1_voronoi_trial(sc, rng); });
  }
  const HopScene s = make_scene(sc, 1);
  return run_bernoulli(
      plan.trials, threads, plan.master_seed, kLaneHop1,
      [&](Rng& rng) { return hop1_cap_trial(sc, s, fixed_r0, rng); });
}

Estimate simulate_hop2_impl(const ScenarioConfig& sc, const TrialPlan& plan,
                            std::optional<double> fixed_r0) {
  // Hop 2 has no cell approximation to bypass; both modes coincide.
  const HopScene s = make_scene(sc, 2);
  return run_bernoulli(
      plan.trials, resolve_threads(plan.threads), plan.master_seed, kLaneHop2,
      [&](Rng& rng) { return hop2_trial(sc, s, fixed_r0, rng); });
}

}  // namespace

Estimate simulate_hop1(const ScenarioConfig& sc, const TrialPlan& plan) {
  return simulate_hop1_impl(sc, plan, std::nullopt);
}

Estimate simulate_hop2(const ScenarioConfig& sc, const TrialPlan& plan) {
  return simulate_hop2_impl(sc, plan, std::nullopt);
}

Estimate simulate_hop1_at(const ScenarioConfig& sc, double r0_m,
                          const TrialPlan& plan) {
  return simulate_hop1_impl(sc, plan, r0_m);
}

Estimate simulate_hop2_at(const ScenarioConfig& sc, double r0_m,
                          const TrialPlan& plan) {
  return simulate_hop2_impl(sc, plan, r0_m);
}

ConnectivityResult simulate_overall(const ScenarioConfig& sc,
                                    const TrialPlan& plan) {
  ConnectivityResult r;
  r.method = ConnectivityResult::Method::simulation;
  r.trials = plan.trials;
  const bool run1 = plan.hops != HopSelect::hop2;
  const bool run2 = plan.hops != HopSelect::hop1;
  Estimate e1, e2;
  e1.mean = e2.mean = 1.0;
  if (run1) {
    e1 = simulate_hop1(sc, plan);
    r.p1 = e1.mean;
    r.p1_err = ErrorBar{e1.std_error, e1.ci_low, e1.ci_high};
  }
  if (run2) {
    e2 = simulate_hop2(sc, plan);
    r.p2 = e2.mean;
    r.p2_err = ErrorBar{e2.std_error, e2.ci_low, e2.ci_high};
  }
  r.p_overall = e1.mean * e2.mean;
  const double se = std::sqrt(square(e2.mean * e1.std_error) +
                              square(e1.mean * e2.std_error));
  r.overall_err = ErrorBar{se, std::max(0.0, r.p_overall - 1.96 * se),
                           std::min(1.0, r.p_overall + 1.96 * se)};
  return r;
}

}  // namespace airsat
