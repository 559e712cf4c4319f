#include "holsh/bridge/growth_experiment.hpp"

#include <algorithm>

#include "holsh/cocycle/cocycle.hpp"
#include "holsh/common/error.hpp"
#include "holsh/common/parallel.hpp"
#include "holsh/common/rng.hpp"

namespace holsh::bridge {

GrowthReport sublinear_growth_experiment(const maps::SmoothMap& map, const OrbitSpec& orbits,
                                         std::span<const long> N_grid,
                                         const GrowthExperimentOptions& options) {
  if (N_grid.empty()) throw PreconditionError("empty N grid");
  if (orbits.random_orbits > 0 && !map.probe) throw PreconditionError(map.name + " has no probe for random orbits");

  std::vector<maps::Vec> starts = orbits.starts;
  for (int j = 0; j < orbits.random_orbits; ++j) {
    Rng rng = make_stream(options.seed, 1000 + static_cast<std::uint64_t>(j));
    starts.push_back(map.probe(rng, orbits.probe_d));
  }
  if (starts.empty()) throw PreconditionError("no orbits to sample");

  const long n_max = *std::max_element(N_grid.begin(), N_grid.end());
  GrowthReport report;
  report.map = map.name;
  report.orbits.resize(starts.size());

  // Orbits run in parallel; each fit is serial so the result is independent
  // of the thread count.
  parallel_for(starts.size(), options.jobs, [&](std::size_t j) {
    const cocycle::Cocycle c = cocycle::from_orbit(map, starts[j], 0, n_max - 1);
    cocycle::QOptions q;
    q.samples = options.samples;
    q.seed = options.seed;
    auto& o = report.orbits[j];
    o.orbit_id = static_cast<int>(j);
    o.start = starts[j];
    o.fit = cocycle::fit_slow_growth(c, N_grid, 0, q);
  });

  std::vector<double> gammas;
  for (const auto& o : report.orbits) {
    gammas.push_back(o.fit.gamma);
    for (std::size_t t = 0; t < o.fit.N.size(); ++t)
      report.rows.push_back({o.orbit_id, o.fit.N[t], o.fit.Q_hat[t], o.fit.gamma});
  }
  std::sort(gammas.begin(), gammas.end());
  report.gamma_min = gammas.front();
  report.gamma_max = gammas.back();
  const std::size_t mid = gammas.size() / 2;
  report.gamma_median = gammas.size() % 2 ? gammas[mid] : 0.5 * (gammas[mid - 1] + gammas[mid]);
  return report;
}

}  // namespace holsh::bridge
