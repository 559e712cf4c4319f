// One PASS/FAIL line per acceptance criterion. Criterion 11 is reported but
// does not affect the exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "holsh/bridge/lift.hpp"
#include "holsh/bridge/residual.hpp"
#include "holsh/cocycle/cocycle.hpp"
#include "holsh/cocycle/min_sup.hpp"
#include "holsh/cocycle/oracle.hpp"
#include "holsh/cocycle/slow_growth.hpp"
#include "holsh/common/error.hpp"
#include "holsh/common/rng.hpp"
#include "holsh/dichotomy/bounded_solutions.hpp"
#include "holsh/dichotomy/property_a.hpp"
#include "holsh/dichotomy/splitting.hpp"
#include "holsh/dichotomy/transversality.hpp"
#include "holsh/dichotomy/trichotomy.hpp"
#include "holsh/maps/catalog.hpp"
#include "holsh/maps/circle_example.hpp"
#include "holsh/pseudo/circle_checks.hpp"
#include "holsh/pseudo/exponent.hpp"
#include "support.hpp"

using namespace holsh;
using cocycle::Cocycle;
using cocycle::MatrixXd;
using cocycle::VectorXd;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const std::vector<double> kGrid = pseudo::geometric_grid(1e-6, 1e-3, 8);

pseudo::ExponentEstimate exponent(const std::string& map, pseudo::WindowRule rule, pseudo::NoiseKind noise,
                                  pseudo::SolverKind solver, std::vector<double> grid = kGrid) {
  pseudo::ExponentOptions o;
  o.d_grid = std::move(grid);
  o.rule = rule;
  o.trials = 32;
  o.seed = 1;
  o.noise = noise;
  o.solver = solver;
  return pseudo::estimate_holder_exponent(maps::find_map(map), o);
}

Verdict in_range(const pseudo::ExponentEstimate& e, double lo, double hi) {
  return {e.theta_hat >= lo && e.theta_hat <= hi,
          fmt("theta_hat=%.4f +- %.4f, want [%g, %g], excluded=%d", e.theta_hat, e.std_error, lo, hi, e.excluded)};
}

Verdict criterion1() {
  return in_range(exponent("circle_example", pseudo::WindowRule::power(10, 2.0 / 3), pseudo::NoiseKind::adversarial_outward,
                           pseudo::SolverKind::optimal),
                  0.28, 0.38);
}

Verdict criterion2() {
  return in_range(exponent("circle_example", pseudo::WindowRule::power(1, 0.5), pseudo::NoiseKind::adversarial_outward,
                           pseudo::SolverKind::optimal),
                  0.45, 0.55);
}

Verdict criterion3() {
  const maps::CircleExample ex;
  pseudo::CircleSweepOptions o;
  o.runs = 1000;
  Verdict v{true, ""};
  for (const auto& s : pseudo::circle_proposition_sweeps(ex, o)) {
    if (s.violations != 0 || s.kept == 0) v.pass = false;
    v.detail += fmt("%s: kept %ld/%ld violations %ld worst %.3f; ", s.name.c_str(), s.kept, s.runs, s.violations,
                    s.worst_ratio);
  }
  return v;
}

Verdict criterion4() {
  return in_range(exponent("cat", pseudo::WindowRule::power(10, 2.0 / 3), pseudo::NoiseKind::uniform_ball,
                           pseudo::SolverKind::newton),
                  0.9, 1.05);
}

Verdict criterion5() {
  Rng rng = make_stream(2024, 5);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + t % 2;
    const long N = 1 + static_cast<long>(uniform01(rng) * 12);
    const Cocycle c = testing::random_cocycle(rng, m, 0, N);
    const auto p = cocycle::make_problem(c, 0, testing::random_forcing(rng, m, N));
    worst = std::max(worst, std::abs(cocycle::solve_min_sup(p).F - cocycle::brute_force_F_oracle(p)));
  }
  return {worst <= 1e-6, fmt("max |F - oracle| = %.3g over 200 instances", worst)};
}

Verdict criterion6() {
  Verdict v{true, ""};
  const Cocycle id = Cocycle::scalar(std::vector<double>(50, 1.0), 0);
  for (long N : {4L, 10L, 50L}) {
    const double q = cocycle::estimate_Q(id, 0, N).Q_hat;
    if (std::abs(q - N / 2.0) > 1e-6) v.pass = false;
    v.detail += fmt("Q(0,%ld)=%.9g ", N, q);
  }
  const Cocycle two = Cocycle::scalar(std::vector<double>(200, 2.0), 0);
  double worst = 0.0;
  for (long N : {10L, 50L, 100L, 200L}) worst = std::max(worst, cocycle::estimate_Q(two, 0, N).Q_hat);
  if (worst > 1 + 1e-6) v.pass = false;
  v.detail += fmt("lambda=2 max L_hat=%.9g", worst);
  return v;
}

Verdict criterion7() {
  const long grid[] = {10, 20, 40, 80, 160};
  MatrixXd cat(2, 2);
  cat << 2, 1, 1, 1;
  const double g_id = cocycle::fit_slow_growth(Cocycle::scalar(std::vector<double>(160, 1.0), 0), grid).gamma;
  const double g_cat = cocycle::fit_slow_growth(Cocycle::constant(cat, 0, 159), grid).gamma;
  const double g_two = cocycle::fit_slow_growth(Cocycle::scalar(std::vector<double>(160, 2.0), 0), grid).gamma;
  return {g_id >= 0.9 && g_id <= 1.1 && g_cat < 0.1 && g_two < 0.1,
          fmt("gamma identity=%.4f cat=%.4f lambda2=%.4f", g_id, g_cat, g_two)};
}

Cocycle scalar_steps(double before, double after, long half) {
  std::vector<double> l(static_cast<std::size_t>(2 * half));
  for (long k = 0; k < 2 * half; ++k) l[static_cast<std::size_t>(k)] = k < half ? before : after;
  return Cocycle::scalar(std::move(l), -half);
}

Verdict criterion8() {
  using namespace dichotomy;
  Verdict v{true, ""};
  MatrixXd diag(2, 2), cat(2, 2);
  diag << 0.5, 0, 0, 2;
  cat << 2, 1, 1, 1;
  const double cat_rate = (3 - std::sqrt(5.0)) / 2;
  struct Hyp {
    const char* name;
    Cocycle c;
    double lambda;
    double tol;
  };
  const Hyp hyps[] = {{"diag", Cocycle::constant(diag, -100, 99), 0.5, 0.02},
                      {"cat", Cocycle::constant(cat, -100, 99), cat_rate, 0.05}};
  for (const auto& h : hyps) {
    const auto f = detect_report(h.c, Half::forward);
    const auto b = detect_report(h.c, Half::backward);
    const bool ok = f.splitting && b.splitting && std::abs(f.splitting->lambda - h.lambda) <= h.tol * h.lambda &&
                    std::abs(b.splitting->lambda - h.lambda) <= h.tol * h.lambda;
    const auto t = pliss_transversality(f.splitting, b.splitting);
    if (!ok || !t.pass) v.pass = false;
    v.detail += fmt("%s lambda=%.5f/%.5f angle=%.4f; ", h.name, f.splitting ? f.splitting->lambda : NAN,
                    b.splitting ? b.splitting->lambda : NAN, t.angle);
  }
  const Cocycle id = Cocycle::constant(MatrixXd::Identity(2, 2), -100, 99);
  const bool none = !detect_report(id, Half::forward).splitting && !detect_report(id, Half::backward).splitting;
  if (!none) v.pass = false;
  v.detail += fmt("identity none=%d; ", none);

  const long grid[] = {8, 16, 32, 64};
  struct Row {
    const char* name;
    Cocycle c;
    bool expected;
  };
  const Row rows[] = {{"cat", Cocycle::constant(cat, -100, 99), true},
                      {"identity", id, false},
                      {"lambda2", Cocycle::scalar(std::vector<double>(200, 2.0), -100), true},
                      {"mixed", scalar_steps(0.5, 2.0, 100), false}};
  for (const auto& r : rows) {
    const bool a = property_A_check(r.c).hyperbolic_like();
    const bool bounded = bounded_solution_trend(r.c, WindowPart::whole, grid).bounded;
    if (a != r.expected || bounded != r.expected) v.pass = false;
    v.detail += fmt("%s A=%d bounded=%d ", r.name, a, bounded);
  }
  return v;
}

Verdict criterion9() {
  using namespace dichotomy;
  const bool expanding = trichotomy_1d(Cocycle::scalar(std::vector<double>(20, 2.0), 0), 2).kind ==
                         TrichotomyCase::expanding;
  const bool contracting = trichotomy_1d(Cocycle::scalar(std::vector<double>(20, 0.5), 0), 2).kind ==
                           TrichotomyCase::contracting;
  const auto m = trichotomy_1d(scalar_steps(2.0, 0.5, 10), 2);
  const bool mixed = m.kind == TrichotomyCase::mixed && m.i1 < m.i2;
  const auto half = growth_threshold(1, 0.5);
  const auto one = growth_threshold(1, 1.0, 1000000);
  return {expanding && contracting && mixed && half.has_value() && !one.has_value(),
          fmt("cases %d%d%d, N(1,1/2)=%ld, N(1,1)=%s", expanding, contracting, mixed, half ? *half : -1L,
              one ? "finite" : "none")};
}

VectorXd random_unit(Rng& rng, int m) {
  VectorXd v(m);
  for (int j = 0; j < m; ++j) v(j) = standard_normal(rng);
  return v.normalized();
}

Verdict criterion10() {
  Verdict v{true, ""};
  const long runs = 1000, N = 10;
  for (const auto& map : maps::builtin_maps()) {
    long lift_bad = 0, lift_skipped = 0, res_bad = 0;
    double lift_worst = 0.0, res_worst = 0.0;
    for (long t = 0; t < runs; ++t) {
      Rng rng = make_stream(10, static_cast<std::uint64_t>(t));
      const double d = std::pow(10.0, uniform(rng, -8, -5));
      const maps::Vec p0 = map.probe(rng, d);
      try {
        const Cocycle coc = cocycle::from_orbit(map, p0, 0, N - 1);
        std::vector<VectorXd> w;
        for (long k = 0; k < N; ++k) w.push_back(random_unit(rng, map.dim()));
        auto sol = cocycle::solve_min_sup(cocycle::make_problem(coc, 0, std::move(w)));
        // Scaled to sup norm 1, where the lift bound reads (S + 2) d.
        for (auto& vk : sol.v) vk /= sol.F;
        const auto lifted = bridge::lift_solution_to_pseudo(map, p0, sol.v, d);
        const double literal = (lifted.S + 2.0) * d * (1.0 + 1e-9);
        if (!lifted.within_bound() || lifted.defect > literal) ++lift_bad;
        lift_worst = std::max(lift_worst, lifted.defect / lifted.defect_bound);
      } catch (const PreconditionError&) {
        ++lift_skipped;
      } catch (const SingularError&) {
        ++lift_skipped;
      }

      const maps::Vec x0 = map.space.wrap(p0 + d * random_unit(rng, map.dim()));
      std::vector<maps::Vec> base{p0}, shadow{x0};
      while (static_cast<long>(base.size()) <= 50) {
        const maps::Vec p = map.eval(base.back()), x = map.eval(shadow.back());
        if (map.space.dist(p, x) > 0.01) break;
        base.push_back(p);
        shadow.push_back(x);
      }
      const auto r = bridge::shadow_to_cocycle_residual(map, base, shadow);
      if (!r.bound_holds()) ++res_bad;
      res_worst = std::max(res_worst, r.worst_ratio);
    }
    if (lift_bad || res_bad || lift_skipped == runs) v.pass = false;
    v.detail += fmt("%s lift %ld bad %ld skipped (worst %.2f), residual %ld bad (worst %.2f); ", map.name.c_str(),
                    lift_bad, lift_skipped, lift_worst, res_bad, res_worst);
  }
  return v;
}

Verdict criterion11() {
  const auto e = exponent("henon", pseudo::WindowRule::power(1, 0.5), pseudo::NoiseKind::uniform_ball,
                          pseudo::SolverKind::newton, pseudo::geometric_grid(1e-10, 1e-6, 5));
  std::printf("  Henon table (d, n, worst epsilon, failed trials):\n");
  for (const auto& r : e.rows) std::printf("    %.3g %ld %.6g %d\n", r.d, r.n, r.worst_epsilon, r.failures);
  return {!e.rows.empty(), fmt("theta_hat=%.4f +- %.4f, excluded=%d (exploratory)", e.theta_hat, e.std_error,
                               e.excluded)};
}

}  // namespace

int main() {
  const std::vector<std::function<Verdict()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8,
                                                          criterion9, criterion10, criterion11};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool gating = i + 1 != 11;
    if (gating && !v.pass) ++failures;
    std::printf("criterion %zu: %s%s  %s [%.1fs]\n", i + 1, v.pass ? "PASS" : "FAIL", gating ? "" : " (non-gating)",
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
