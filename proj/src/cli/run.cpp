#include "holsh/cli/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "holsh/bridge/growth_experiment.hpp"
#include "holsh/bridge/lift.hpp"
#include "holsh/bridge/residual.hpp"
#include "holsh/cocycle/cocycle_io.hpp"
#include "holsh/cocycle/min_sup.hpp"
#include "holsh/cocycle/slow_growth.hpp"
#include "holsh/common/rng.hpp"
#include "holsh/dichotomy/bounded_solutions.hpp"
#include "holsh/dichotomy/property_a.hpp"
#include "holsh/dichotomy/trichotomy.hpp"
#include "holsh/maps/catalog.hpp"
#include "holsh/pseudo/circle_checks.hpp"
#include "holsh/pseudo/exponent.hpp"
#include "holsh/pseudo/shadowing.hpp"

namespace holsh::cli {

namespace {

using cocycle::Cocycle;
using Eigen::VectorXd;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// CSV sink that is either a file or nothing. Opening happens before any work
// so that an unwritable path fails fast.
class Csv {
 public:
  Csv(const std::string& path, const std::string& header) {
    if (path.empty()) return;
    file_.open(path, std::ios::out | std::ios::trunc);
    if (!file_) throw ConfigError("cannot write output file " + path, kUnwritableOutput);
    file_ << header << '\n';
  }
  template <class... Fields>
  void row(const Fields&... fields) {
    if (!file_.is_open()) return;
    bool first = true;
    ((file_ << (first ? "" : ",") << fields, first = false), ...);
    file_ << '\n';
  }
  void finish(const std::string& path) {
    if (!file_.is_open()) return;
    file_.flush();
    if (!file_) throw ConfigError("failed writing output file " + path, kUnwritableOutput);
  }

 private:
  std::ofstream file_;
};

maps::SmoothMap load_map(const ExperimentConfig& c) {
  maps::CatalogOptions o;
  o.circle.delta = c.delta;
  return maps::find_map(c.map, o);
}

maps::Vec start_point(const ExperimentConfig& c, const maps::SmoothMap& map, Rng& rng, double d) {
  if (c.start.empty()) return map.probe(rng, d);
  if (static_cast<int>(c.start.size()) != map.dim())
    throw ConfigError("start needs " + std::to_string(map.dim()) + " coordinates");
  maps::Vec p(map.dim());
  for (int j = 0; j < map.dim(); ++j) p(j) = c.start[static_cast<std::size_t>(j)];
  return map.space.wrap(p);
}

// The cocycle named by `file`, or the derivative cocycle of the map along an
// orbit over transitions [k0, k1].
Cocycle load_source(const ExperimentConfig& c, long k0, long k1) {
  if (!c.file.empty()) return cocycle::load_cocycle(c.file);
  const auto map = load_map(c);
  Rng rng = make_stream(c.seed, 0);
  return cocycle::from_orbit(map, start_point(c, map, rng, c.d), k0, k1);
}

int cmd_shadow(const ExperimentConfig& c, std::ostream& out) {
  const auto map = load_map(c);
  Csv csv(c.output, "config_hash,map,d,n,solver,status,epsilon,iterations,residual");
  Rng rng = make_stream(c.seed, 0);
  const maps::Vec x0 = start_point(c, map, rng, c.d);
  const long n = c.n > 0 ? c.n : c.window.window(c.d);
  const pseudo::NoiseModel noise{pseudo::parse_noise_kind(c.noise), c.d, rng()};
  const auto traj = pseudo::generate(map, x0, n, noise);
  const auto solver = pseudo::parse_solver_kind(c.solver);
  pseudo::ShadowingResult r;
  try {
    r = solver == pseudo::SolverKind::newton ? pseudo::shadow_newton(map, traj) : pseudo::shadow_optimal(map, traj);
  } catch (const DivergenceError& e) {
    out << "status=diverged\nmessage=" << e.what() << '\n';
    return kInconclusive;
  }
  out << "map=" << map.name << "\nd=" << num(c.d) << "\nn=" << n << "\nsolver=" << r.solver
      << "\nstatus=" << pseudo::to_string(r.status) << "\nepsilon=" << num(r.epsilon)
      << "\niterations=" << r.iterations << "\nresidual=" << num(r.residual) << '\n';
  csv.row(c.hash(), map.name, num(c.d), n, r.solver, pseudo::to_string(r.status), num(r.epsilon), r.iterations,
          num(r.residual));
  csv.finish(c.output);
  switch (r.status) {
    case pseudo::ShadowStatus::ok: return kPass;
    case pseudo::ShadowStatus::fallback: return kInconclusive;
    case pseudo::ShadowStatus::failed: return kFail;
  }
  return kFail;
}

int cmd_exponent(const ExperimentConfig& c, std::ostream& out) {
  const auto map = load_map(c);
  Csv csv(c.output, "config_hash,map,d,n,trial,solver,status,epsilon");
  pseudo::ExponentOptions o;
  o.d_grid = c.d_grid.values();
  o.rule = c.window;
  o.trials = c.trials;
  o.seed = c.seed;
  o.noise = pseudo::parse_noise_kind(c.noise);
  o.solver = pseudo::parse_solver_kind(c.solver);
  o.jobs = c.jobs;
  const auto e = pseudo::estimate_holder_exponent(map, o);
  for (const auto& cell : e.cells)
    csv.row(c.hash(), map.name, num(cell.d), cell.n, cell.trial, cell.solver, pseudo::to_string(cell.status),
            num(cell.epsilon));
  csv.finish(c.output);

  out << "map=" << map.name << '\n';
  for (const auto& row : e.rows)
    out << "row d=" << num(row.d) << " n=" << row.n << " worst_epsilon=" << num(row.worst_epsilon)
        << " failures=" << row.failures << " in_fit=" << (row.in_fit ? 1 : 0) << '\n';
  out << "theta_hat=" << num(e.theta_hat) << "\nstd_error=" << num(e.std_error) << "\nfit_rows=" << e.n_cells
      << "\nexcluded=" << e.excluded << '\n';
  if (e.n_cells < 2 || !std::isfinite(e.theta_hat)) return kInconclusive;
  if ((c.theta_min && e.theta_hat < *c.theta_min) || (c.theta_max && e.theta_hat > *c.theta_max)) {
    out << "check=fail\n";
    return kFail;
  }
  if (c.theta_min || c.theta_max) out << "check=pass\n";
  return kPass;
}

int cmd_circle_verify(const ExperimentConfig& c, std::ostream& out) {
  Csv csv(c.output, "config_hash,proposition,runs,kept,violations,checked_points,worst_ratio");
  maps::CircleExampleParams p;
  p.delta = c.delta;
  const maps::CircleExample ex(p);
  const auto rep = ex.verify();
  out << "delta=" << num(c.delta) << "\nmonotone=" << rep.monotone << "\ntwo_fixed_points=" << rep.two_fixed_points
      << "\nabsorbing=" << rep.absorbing << "\nrepelling=" << rep.repelling << "\nseparated=" << rep.separated
      << "\nN=" << rep.N << "\nmin_slope=" << num(rep.min_slope) << "\nmax_slope=" << num(rep.max_slope) << '\n';
  if (!rep.ok()) {
    out << "construction=fail\n";
    return kFail;
  }
  pseudo::CircleSweepOptions o;
  o.runs = c.runs;
  o.seed = c.seed;
  long violations = 0;
  for (const auto& s : pseudo::circle_proposition_sweeps(ex, o)) {
    out << "sweep " << s.name << " runs=" << s.runs << " kept=" << s.kept << " violations=" << s.violations
        << " checked_points=" << s.checked_points << " worst_ratio=" << num(s.worst_ratio) << '\n';
    csv.row(c.hash(), s.name, s.runs, s.kept, s.violations, s.checked_points, num(s.worst_ratio));
    violations += s.violations;
  }
  csv.finish(c.output);
  out << "violations=" << violations << '\n';
  return violations == 0 ? kPass : kFail;
}

int cmd_cocycle(const ExperimentConfig& c, std::ostream& out) {
  const std::string op = c.op.empty() ? "info" : c.op;
  long longest = c.N;
  for (long n : c.N_grid) longest = std::max(longest, n);

  if (op == "export") {
    if (c.output.empty()) throw ConfigError("export needs an output path");
    const Cocycle coc = load_source(c, c.i, c.i + longest - 1);
    try {
      cocycle::save_cocycle(c.output, coc);
    } catch (const Error& e) {
      throw ConfigError(e.what(), kUnwritableOutput);
    }
    out << "exported=" << c.output << "\nm=" << coc.dim() << "\nk0=" << coc.k0() << "\nk1=" << coc.k1() << '\n';
    return kPass;
  }

  const Cocycle coc = load_source(c, c.i, c.i + longest - 1);
  out << "m=" << coc.dim() << "\nk0=" << coc.k0() << "\nk1=" << coc.k1() << "\nR=" << num(coc.R())
      << "\nsampled_norm_sup=" << num(coc.sampled_norm_sup()) << '\n';
  if (op == "info") return kPass;

  if (op == "solve") {
    VectorXd e = VectorXd::Zero(coc.dim());
    e(0) = 1.0;
    const auto sol = cocycle::solve_min_sup(cocycle::make_problem(coc, c.i, std::vector<VectorXd>(c.N, e)));
    out << "i=" << c.i << "\nN=" << c.N << "\nF=" << num(sol.F) << '\n';
    return kPass;
  }
  cocycle::QOptions q;
  q.samples = c.trials;
  q.seed = c.seed;
  q.jobs = c.jobs;
  if (op == "Q") {
    const auto e = cocycle::estimate_Q(coc, c.i, c.N, q);
    out << "i=" << c.i << "\nN=" << c.N << "\nQ_hat=" << num(e.Q_hat) << "\ndraws=" << e.draws
        << "\nevaluations=" << e.evaluations << '\n';
    return kPass;
  }
  if (op == "fit") {
    Csv csv(c.output, "config_hash,N,Q_hat,gamma_hat");
    const auto fit = cocycle::fit_slow_growth(coc, c.N_grid, c.i, q);
    for (std::size_t j = 0; j < fit.N.size(); ++j) {
      out << "row N=" << fit.N[j] << " Q_hat=" << num(fit.Q_hat[j]) << '\n';
      csv.row(c.hash(), fit.N[j], num(fit.Q_hat[j]), num(fit.gamma));
    }
    csv.finish(c.output);
    out << "gamma_hat=" << num(fit.gamma) << "\ngamma_stderr=" << num(fit.gamma_stderr) << "\nL=" << num(fit.L)
        << "\nregime=" << cocycle::to_string(fit.regime) << '\n';
    return kPass;
  }
  throw ConfigError("unknown cocycle op: " + op + " (info, solve, Q, fit, export)");
}

void print_detect(std::ostream& out, const char* label, const dichotomy::DetectOutcome& d) {
  out << label << "=" << (d.splitting ? "pass" : "fail") << '\n';
  if (d.splitting) {
    const auto& s = *d.splitting;
    out << label << "_lambda=" << num(s.lambda) << '\n'
        << label << "_C=" << num(s.C) << '\n'
        << label << "_H=" << num(s.H) << '\n'
        << label << "_stable_dim=" << s.stable_dim() << '\n'
        << label << "_unstable_dim=" << s.unstable_dim() << '\n';
  } else {
    out << label << "_reason=" << d.reason << '\n';
  }
}

int cmd_dichotomy(const ExperimentConfig& c, std::ostream& out) {
  const std::string check = c.check.empty() ? "property-a" : c.check;
  dichotomy::DetectOptions o;
  o.T = c.T;
  o.seed = c.seed;
  o.split = 0;

  if (check == "property-a") {
    dichotomy::PropertyAReport r;
    if (c.file.empty()) {
      const auto map = load_map(c);
      Rng rng = make_stream(c.seed, 0);
      r = dichotomy::property_A_check(map, start_point(c, map, rng, c.d), c.horizon, o);
    } else {
      r = dichotomy::property_A_check(cocycle::load_cocycle(c.file), o);
    }
    out << "A1_forward=" << dichotomy::to_string(r.a1_forward) << "\nA1_backward=" << dichotomy::to_string(r.a1_backward)
        << "\nA2=" << dichotomy::to_string(r.a2) << "\nangle=" << num(r.transversality.angle)
        << "\nverdict=" << r.verdict() << " (numerical evidence)\n";
    if (!r.error.empty()) out << "error=" << r.error << '\n';
    if (r.hyperbolic_like()) return kPass;
    const bool errored = r.a1_forward == dichotomy::CheckStatus::error ||
                         r.a1_backward == dichotomy::CheckStatus::error;
    return errored ? kInconclusive : kFail;
  }

  const Cocycle coc = load_source(c, -c.horizon, c.horizon - 1);
  if (check == "detect" || check == "transversality") {
    const auto f = dichotomy::detect_report(coc, dichotomy::Half::forward, o);
    const auto b = dichotomy::detect_report(coc, dichotomy::Half::backward, o);
    print_detect(out, "forward", f);
    print_detect(out, "backward", b);
    if (check == "detect") return f.splitting && b.splitting ? kPass : kFail;
    const auto t = dichotomy::pliss_transversality(f.splitting, b.splitting);
    out << "transversality=" << dichotomy::to_string(t.status) << "\nangle=" << num(t.angle)
        << "\nsigma_min=" << num(t.sigma_min) << "\ndefect_dimension=" << t.defect_dimension << '\n';
    return t.pass ? kPass : kFail;
  }
  if (check == "trichotomy") {
    dichotomy::TrichotomyResult r;
    if (coc.dim() == 1) {
      r = dichotomy::trichotomy_1d(coc, c.N);
    } else {
      VectorXd e = VectorXd::Zero(coc.dim());
      e(0) = 1.0;
      r = dichotomy::trichotomy_1d(cocycle::normalized_directions(coc, e, coc.k0()), c.N);
    }
    out << "N=" << r.N << "\ncase=" << dichotomy::to_string(r.kind) << '\n';
    if (r.kind == dichotomy::TrichotomyCase::mixed) out << "i1=" << r.i1 << "\ni2=" << r.i2 << '\n';
    if (r.kind == dichotomy::TrichotomyCase::none) out << "witness=" << r.witness << '\n';
    return r.kind == dichotomy::TrichotomyCase::none ? kFail : kPass;
  }
  if (check == "bounded") {
    dichotomy::BoundedCheckOptions bo;
    bo.trials = c.trials;
    bo.seed = c.seed;
    bo.jobs = c.jobs;
    const auto t = dichotomy::bounded_solution_trend(coc, dichotomy::WindowPart::whole, c.N_grid, bo);
    for (std::size_t j = 0; j < t.N.size(); ++j) out << "row N=" << t.N[j] << " L_hat=" << num(t.L_hat[j]) << '\n';
    out << "slope=" << num(t.slope) << "\nbounded=" << (t.bounded ? "yes" : "no") << '\n';
    return t.bounded ? kPass : kFail;
  }
  throw ConfigError("unknown dichotomy check: " + check + " (property-a, detect, transversality, trichotomy, bounded)");
}

VectorXd random_unit(Rng& rng, int m) {
  VectorXd v(m);
  for (int j = 0; j < m; ++j) v(j) = standard_normal(rng);
  return v.normalized();
}

int cmd_bridge(const ExperimentConfig& c, std::ostream& out) {
  const std::string op = c.op.empty() ? "lift" : c.op;
  const auto map = load_map(c);

  if (op == "lift") {
    Csv csv(c.output, "config_hash,map,trial,d,max_v,defect,defect_bound");
    long violations = 0, skipped = 0;
    double worst = 0.0;
    for (long t = 0; t < c.runs; ++t) {
      Rng rng = make_stream(c.seed, static_cast<std::uint64_t>(t));
      const maps::Vec p0 = start_point(c, map, rng, c.d);
      try {
        const Cocycle coc = cocycle::from_orbit(map, p0, 0, c.N - 1);
        std::vector<VectorXd> w;
        for (long k = 0; k < c.N; ++k) w.push_back(random_unit(rng, map.dim()));
        const auto sol = cocycle::solve_min_sup(cocycle::make_problem(coc, 0, std::move(w)));
        const auto lifted = bridge::lift_solution_to_pseudo(map, p0, sol.v, c.d);
        if (!lifted.within_bound()) ++violations;
        worst = std::max(worst, lifted.defect / lifted.defect_bound);
        csv.row(c.hash(), map.name, t, num(c.d), num(sol.F), num(lifted.defect), num(lifted.defect_bound));
      } catch (const PreconditionError&) {
        ++skipped;
      } catch (const SingularError&) {
        ++skipped;
      }
    }
    csv.finish(c.output);
    out << "map=" << map.name << "\nruns=" << c.runs << "\nskipped=" << skipped << "\nviolations=" << violations
        << "\nworst_ratio=" << num(worst) << '\n';
    if (violations > 0) return kFail;
    return skipped == c.runs ? kInconclusive : kPass;
  }
  if (op == "residual") {
    Csv csv(c.output, "config_hash,map,trial,steps,max_c,max_residual,worst_ratio");
    long violations = 0;
    double worst = 0.0;
    for (long t = 0; t < c.runs; ++t) {
      Rng rng = make_stream(c.seed, static_cast<std::uint64_t>(t));
      const maps::Vec p0 = start_point(c, map, rng, c.d);
      const maps::Vec x0 = map.space.wrap(p0 + c.d * random_unit(rng, map.dim()));
      // Stop the orbits once they separate beyond 0.01, the radius on which
      // the quadratic constants are calibrated.
      std::vector<maps::Vec> base{p0}, shadow{x0};
      while (static_cast<long>(base.size()) <= c.N) {
        const maps::Vec p = map.eval(base.back()), x = map.eval(shadow.back());
        if (map.space.dist(p, x) > 0.01) break;
        base.push_back(p);
        shadow.push_back(x);
      }
      const auto r = bridge::shadow_to_cocycle_residual(map, base, shadow);
      double max_c = 0.0;
      for (const auto& ck : r.c) max_c = std::max(max_c, ck.norm());
      if (!r.bound_holds()) ++violations;
      worst = std::max(worst, r.worst_ratio);
      csv.row(c.hash(), map.name, t, base.size(), num(max_c), num(r.max_residual), num(r.worst_ratio));
    }
    csv.finish(c.output);
    out << "map=" << map.name << "\nruns=" << c.runs << "\nviolations=" << violations
        << "\nworst_ratio=" << num(worst) << '\n';
    return violations == 0 ? kPass : kFail;
  }
  if (op == "growth") {
    Csv csv(c.output, "config_hash,map,orbit_id,N,Q_hat,gamma_hat");
    bridge::OrbitSpec spec;
    if (!c.start.empty()) {
      Rng rng = make_stream(c.seed, 0);
      spec.starts.push_back(start_point(c, map, rng, c.d));
    } else {
      spec.random_orbits = c.trials;
    }
    spec.probe_d = c.d;
    bridge::GrowthExperimentOptions o;
    o.seed = c.seed;
    o.jobs = c.jobs;
    const auto rep = bridge::sublinear_growth_experiment(map, spec, c.N_grid, o);
    for (const auto& row : rep.rows)
      csv.row(c.hash(), rep.map, row.orbit_id, row.N, num(row.Q_hat), num(row.gamma_hat));
    csv.finish(c.output);
    for (const auto& orb : rep.orbits)
      out << "orbit " << orb.orbit_id << " gamma_hat=" << num(orb.fit.gamma)
          << " regime=" << cocycle::to_string(orb.fit.regime) << '\n';
    out << "map=" << rep.map << "\ngamma_min=" << num(rep.gamma_min) << "\ngamma_median=" << num(rep.gamma_median)
        << "\ngamma_max=" << num(rep.gamma_max) << '\n';
    return kPass;
  }
  throw ConfigError("unknown bridge op: " + op + " (lift, residual, growth)");
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    out << "config_hash=" << config.hash() << '\n';
    const std::string& s = config.subcommand;
    if (s == "shadow") return cmd_shadow(config, out);
    if (s == "exponent") return cmd_exponent(config, out);
    if (s == "circle-verify") return cmd_circle_verify(config, out);
    if (s == "cocycle") return cmd_cocycle(config, out);
    if (s == "dichotomy") return cmd_dichotomy(config, out);
    if (s == "bridge") return cmd_bridge(config, out);
    throw ConfigError("unknown subcommand: " + s);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const WindowError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  }
}

}  // namespace holsh::cli
