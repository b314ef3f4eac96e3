#pragma once

#include <cstdint>

namespace airsat {

// cap_approx mirrors the analytic model (reference distance resampled from
// the cap density, interferers on the cap); full_voronoi places real relay
// cells and serves the typical ground user, as a diagnostic of the
// cell-equals-cap approximation.
enum class SimMode { cap_approx, full_voronoi };

enum class HopSelect { hop1, hop2, both };

struct TrialPlan {
  int trials = 10000;
  std::uint64_t master_seed = 1;
  SimMode mode = SimMode::cap_approx;
  HopSelect hops = HopSelect::both;
  int threads = 0;  // 0: AIRSAT_THREADS env var, else hardware concurrency
  bool include_out_of_cell = false;  // full_voronoi: interferers beyond the serving cell
};

// Bernoulli estimate with its standard error and 95% interval.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  long trials = 0;
};

Estimate make_estimate(long successes, long trials);

}  // namespace airsat
