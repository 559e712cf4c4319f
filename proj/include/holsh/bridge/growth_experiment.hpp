#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "holsh/cocycle/slow_growth.hpp"
#include "holsh/maps/smooth_map.hpp"

namespace holsh::bridge {

/// Orbits to sample: the explicit starts first, then `random_orbits` starts
/// from the map's probe at defect level probe_d.
struct OrbitSpec {
  std::vector<maps::Vec> starts;
  int random_orbits = 0;
  double probe_d = 1e-6;
};

struct GrowthRow {
  int orbit_id = 0;
  long N = 0;
  double Q_hat = 0.0;
  double gamma_hat = 0.0;
};

struct OrbitGrowth {
  int orbit_id = 0;
  maps::Vec start;
  cocycle::SlowGrowthFit fit;
};

struct GrowthReport {
  std::string map;
  std::vector<OrbitGrowth> orbits;
  std::vector<GrowthRow> rows;
  double gamma_min = 0.0;
  double gamma_median = 0.0;
  double gamma_max = 0.0;
};

struct GrowthExperimentOptions {
  int samples = 16;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

/// For every orbit, builds the derivative cocycle A_k = Df(p_k) over
/// k in [0, max N) and fits Q̂(0, N) ≈ L N^γ over N_grid.
GrowthReport sublinear_growth_experiment(const maps::SmoothMap& map, const OrbitSpec& orbits,
                                         std::span<const long> N_grid,
                                         const GrowthExperimentOptions& options = {});

}  // namespace holsh::bridge
