#pragma once

#include <optional>

#include "airsat/scenario.hpp"
#include "airsat/sim_types.hpp"

namespace airsat {

// Per-hop Monte Carlo success estimates. Each trial draws its own RNG
// substream from (master_seed, trial index, hop lane), so estimates are a
// pure function of (config, plan) regardless of thread count.
Estimate simulate_hop1(const ScenarioConfig& sc, const TrialPlan& plan);
Estimate simulate_hop2(const ScenarioConfig& sc, const TrialPlan& plan);

// Both hops on independent lanes; p_overall = p1*p2 with propagated error.
ConnectivityResult simulate_overall(const ScenarioConfig& sc,
                                    const TrialPlan& plan);

// Fixed reference distance (diagnostic; matches the conditional success of
// the closed form as trials grow).
Estimate simulate_hop1_at(const ScenarioConfig& sc, double r0_m,
                          const TrialPlan& plan);
Estimate simulate_hop2_at(const ScenarioConfig& sc, double r0_m,
                          const TrialPlan& plan);

// Thread count resolution: plan.threads, else AIRSAT_THREADS, else hardware.
int resolve_threads(int requested);

}  // namespace airsat
