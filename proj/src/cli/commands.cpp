#include "holsh/cli/commands.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holsh/cli/config.hpp"
#include "holsh/cli/run.hpp"

namespace holsh::cli {

namespace {

struct Flags {
  std::string config;
  bool dump = false;
  std::string map, output, solver, noise, file, op, check;
  std::uint64_t seed = 0;
  double d_start = 0, d_stop = 0, C = 0, omega = 0, delta = 0, d = 0, theta_min = 0, theta_max = 0;
  int d_points = 0, trials = 0, T = 0;
  bool d_linear = false;
  long window_n = 0, runs = 0, n = 0, N = 0, i = 0, horizon = 0;
  unsigned jobs = 0;
  std::vector<long> N_grid;
  std::vector<double> start;

  CLI::Option* opt(const std::string& name) const { return app->get_option_no_throw(name); }
  bool given(const std::string& name) const {
    const auto* o = opt(name);
    return o != nullptr && o->count() > 0;
  }
  CLI::App* app = nullptr;
};

void add_flags(CLI::App* sub, Flags& f) {
  f.app = sub;
  sub->add_option("--config", f.config, "JSON config file; flags override its values");
  sub->add_flag("--dump-config", f.dump, "Print the effective config as JSON and exit");
  sub->add_option("--map", f.map, "Catalogue map: circle_example, cat, contraction, identity, henon");
  sub->add_option("--seed", f.seed, "Seed of every random stream");
  sub->add_option("--d-start", f.d_start, "Smallest d of the grid");
  sub->add_option("--d-stop", f.d_stop, "Largest d of the grid");
  sub->add_option("--d-points", f.d_points, "Number of d values");
  sub->add_flag("--d-linear", f.d_linear, "Space the d grid linearly instead of geometrically");
  sub->add_option("--window-n", f.window_n, "Fixed window length");
  sub->add_option("--C", f.C, "Window rule n = ceil(C d^-omega)");
  sub->add_option("--omega", f.omega, "Window rule exponent");
  sub->add_option("--trials", f.trials, "Trials per grid cell, or forcing draws for Q");
  sub->add_option("--runs", f.runs, "Randomized runs of the verification sweeps");
  sub->add_option("--N-grid", f.N_grid, "Increasing window lengths for growth fits")->delimiter(',');
  sub->add_option("--output", f.output, "CSV output path");
  sub->add_option("--solver", f.solver, "Shadowing solver: optimal or newton");
  sub->add_option("--noise", f.noise, "Noise model: none, uniform, adversarial");
  sub->add_option("--jobs", f.jobs, "Worker threads");
  sub->add_option("--delta", f.delta, "Neighbourhood half-width of the circle example");
  sub->add_option("--d", f.d, "Defect level of single runs");
  sub->add_option("--n", f.n, "Pseudotrajectory length of single runs");
  sub->add_option("--start", f.start, "Start point coordinates")->delimiter(',');
  sub->add_option("--file", f.file, "Cocycle file");
  sub->add_option("--op", f.op, "Operation of the cocycle or bridge subcommand");
  sub->add_option("--check", f.check, "Check of the dichotomy subcommand");
  sub->add_option("--N", f.N, "Window length");
  sub->add_option("--i", f.i, "First index of the window");
  sub->add_option("--horizon", f.horizon, "Orbit half-length for dichotomy checks");
  sub->add_option("--T", f.T, "Probe horizon of dichotomy detection");
  sub->add_option("--theta-min", f.theta_min, "Fail the exponent run below this value");
  sub->add_option("--theta-max", f.theta_max, "Fail the exponent run above this value");
}

ExperimentConfig apply(ExperimentConfig c, const Flags& f) {
  if (f.given("--map")) c.map = f.map;
  if (f.given("--seed")) c.seed = f.seed;
  if (f.given("--d-start")) c.d_grid.start = f.d_start;
  if (f.given("--d-stop")) c.d_grid.stop = f.d_stop;
  if (f.given("--d-points")) c.d_grid.points = f.d_points;
  if (f.d_linear) c.d_grid.geometric = false;
  if (f.given("--window-n")) {
    c.window = pseudo::WindowRule::fixed(f.window_n);
  } else if (f.given("--C") || f.given("--omega")) {
    const bool power = c.window.kind == pseudo::WindowRule::Kind::power;
    const double C = f.given("--C") ? f.C : (power ? c.window.C : 1.0);
    const double omega = f.given("--omega") ? f.omega : (power ? c.window.omega : 2.0 / 3.0);
    c.window = pseudo::WindowRule::power(C, omega);
  }
  if (f.given("--trials")) c.trials = f.trials;
  if (f.given("--runs")) c.runs = f.runs;
  if (f.given("--N-grid")) c.N_grid = f.N_grid;
  if (f.given("--output")) c.output = f.output;
  if (f.given("--solver")) c.solver = f.solver;
  if (f.given("--noise")) c.noise = f.noise;
  if (f.given("--jobs")) c.jobs = f.jobs;
  if (f.given("--delta")) c.delta = f.delta;
  if (f.given("--d")) c.d = f.d;
  if (f.given("--n")) c.n = f.n;
  if (f.given("--start")) c.start = f.start;
  if (f.given("--file")) c.file = f.file;
  if (f.given("--op")) c.op = f.op;
  if (f.given("--check")) c.check = f.check;
  if (f.given("--N")) c.N = f.N;
  if (f.given("--i")) c.i = f.i;
  if (f.given("--horizon")) c.horizon = f.horizon;
  if (f.given("--T")) c.T = f.T;
  if (f.given("--theta-min")) c.theta_min = f.theta_min;
  if (f.given("--theta-max")) c.theta_max = f.theta_max;
  return c;
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-window Hoelder shadowing and linear cocycle experiments"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"shadow", "Shadow one pseudotrajectory"},
      {"exponent", "Estimate the Hoelder shadowing exponent over a d grid"},
      {"circle-verify", "Check the circle example construction and its proposition bounds"},
      {"cocycle", "Cocycle files, min-sup solutions, Q estimates and growth fits"},
      {"dichotomy", "Dichotomy detection, transversality, trichotomy and Property A"},
      {"bridge", "Lifts of cocycle solutions and linearised residuals of orbits"},
  };
  std::vector<std::unique_ptr<Flags>> flags;
  for (const auto& [name, help] : subcommands) {
    flags.push_back(std::make_unique<Flags>());
    add_flags(app.add_subcommand(name, help), *flags.back());
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kPass;
  } catch (const CLI::ParseError& e) {
    const auto* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "error: " << e.what() << '\n' << failed->help();
    return kConfigError;
  }

  for (std::size_t j = 0; j < subcommands.size(); ++j) {
    const Flags& f = *flags[j];
    if (!f.app->parsed()) continue;
    try {
      ExperimentConfig c;
      if (!f.config.empty()) c = load_config_file(f.config);
      c.subcommand = subcommands[j].first;
      c = apply(std::move(c), f);
      if (f.dump) {
        out << c.to_json().dump(2) << '\n';
        return kPass;
      }
      return run(c, out, err);
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      return e.code();
    }
  }
  return kConfigError;
}

}  // namespace holsh::cli
