#include "holsh/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "holsh/common/stats.hpp"
#include "holsh/maps/catalog.hpp"

namespace holsh::cli {

using nlohmann::json;

std::vector<double> GridSpec::values() const {
  if (points < 1) throw ConfigError("d grid needs at least one point", kInvalidGrid);
  if (!(std::isfinite(start) && std::isfinite(stop)) || start > stop)
    throw ConfigError("d grid needs start <= stop", kInvalidGrid);
  if (!(start > 0.0)) throw ConfigError("d grid values must be positive", kInvalidGrid);
  if (points == 1) return {start};
  if (geometric) return pseudo::geometric_grid(start, stop, points);
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) v[static_cast<std::size_t>(j)] = start + (stop - start) * j / (points - 1);
  return v;
}

json ExperimentConfig::to_json() const {
  json w;
  if (window.kind == pseudo::WindowRule::Kind::fixed) {
    w = {{"rule", "fixed"}, {"n", window.n}};
  } else {
    w = {{"rule", "power"}, {"C", window.C}, {"omega", window.omega}};
  }
  json j = {
      {"subcommand", subcommand},
      {"map", map},
      {"seed", seed},
      {"d_grid", {{"start", d_grid.start}, {"stop", d_grid.stop}, {"points", d_grid.points},
                  {"geometric", d_grid.geometric}}},
      {"window", w},
      {"trials", trials},
      {"runs", runs},
      {"N_grid", N_grid},
      {"output", output},
      {"solver", solver},
      {"noise", noise},
      {"jobs", jobs},
      {"delta", delta},
      {"d", d},
      {"n", n},
      {"start", start},
      {"file", file},
      {"op", op},
      {"check", check},
      {"N", N},
      {"i", i},
      {"horizon", horizon},
      {"T", T},
  };
  j["theta_min"] = theta_min ? json(*theta_min) : json(nullptr);
  j["theta_max"] = theta_max ? json(*theta_max) : json(nullptr);
  return j;
}

std::string ExperimentConfig::hash() const {
  json j = to_json();
  j.erase("output");
  j.erase("jobs");
  const std::string text = j.dump();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(std::span<const char>(text.data(), text.size()))));
  return buf;
}

namespace {

template <class T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig merge_json(ExperimentConfig c, const json& j) {
  static const std::set<std::string> known = {
      "subcommand", "map", "seed", "d_grid", "window", "trials", "runs", "N_grid", "output", "solver", "noise",
      "jobs", "delta", "d", "n", "start", "file", "op", "check", "N", "i", "horizon", "T", "theta_min",
      "theta_max"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items())
      if (!known.count(key)) throw ConfigError("unknown config key: " + key);
    take(j, "subcommand", c.subcommand);
    take(j, "map", c.map);
    take(j, "seed", c.seed);
    if (j.contains("d_grid")) {
      const json& g = j.at("d_grid");
      take(g, "start", c.d_grid.start);
      take(g, "stop", c.d_grid.stop);
      take(g, "points", c.d_grid.points);
      take(g, "geometric", c.d_grid.geometric);
    }
    if (j.contains("window")) {
      const json& w = j.at("window");
      const std::string rule = w.value("rule", "power");
      if (rule == "fixed") {
        c.window = pseudo::WindowRule::fixed(w.value("n", c.window.n));
      } else if (rule == "power") {
        c.window = pseudo::WindowRule::power(w.value("C", c.window.C), w.value("omega", c.window.omega));
      } else {
        throw ConfigError("unknown window rule: " + rule);
      }
    }
    take(j, "trials", c.trials);
    take(j, "runs", c.runs);
    take(j, "N_grid", c.N_grid);
    take(j, "output", c.output);
    take(j, "solver", c.solver);
    take(j, "noise", c.noise);
    take(j, "jobs", c.jobs);
    take(j, "delta", c.delta);
    take(j, "d", c.d);
    take(j, "n", c.n);
    take(j, "start", c.start);
    take(j, "file", c.file);
    take(j, "op", c.op);
    take(j, "check", c.check);
    take(j, "N", c.N);
    take(j, "i", c.i);
    take(j, "horizon", c.horizon);
    take(j, "T", c.T);
    if (j.contains("theta_min") && !j.at("theta_min").is_null()) c.theta_min = j.at("theta_min").get<double>();
    if (j.contains("theta_max") && !j.at("theta_max").is_null()) c.theta_max = j.at("theta_max").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return merge_json(std::move(base), j);
}

void validate(const ExperimentConfig& c) {
  const auto names = maps::map_names();
  if (std::find(names.begin(), names.end(), c.map) == names.end()) throw ConfigError("unknown map: " + c.map);
  if (c.trials < 1) throw ConfigError("trials must be positive");
  if (c.runs < 1) throw ConfigError("runs must be positive");
  if (c.jobs < 1) throw ConfigError("jobs must be positive");
  if (!(c.delta > 0.0 && c.delta < 0.125)) throw ConfigError("delta must lie in (0, 1/8)");
  if (c.N_grid.empty()) throw ConfigError("N grid is empty", kInvalidGrid);
  for (std::size_t j = 0; j < c.N_grid.size(); ++j) {
    if (c.N_grid[j] < 1) throw ConfigError("N grid values must be positive", kInvalidGrid);
    if (j > 0 && c.N_grid[j] <= c.N_grid[j - 1]) throw ConfigError("N grid must increase", kInvalidGrid);
  }
  (void)c.d_grid.values();
  if (c.window.kind == pseudo::WindowRule::Kind::fixed ? c.window.n < 1
                                                       : !(c.window.C > 0.0 && c.window.omega >= 0.0))
    throw ConfigError("window rule needs n >= 1, or C > 0 and omega >= 0", kInvalidGrid);
  if (!(c.d > 0.0)) throw ConfigError("d must be positive");
  try {
    (void)pseudo::parse_solver_kind(c.solver);
    (void)pseudo::parse_noise_kind(c.noise);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace holsh::cli
