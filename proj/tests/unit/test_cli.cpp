#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "holsh/cli/commands.hpp"
#include "holsh/cli/config.hpp"
#include "holsh/cli/run.hpp"

using namespace holsh;
using namespace holsh::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "holsh");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(HOLSH_DATA_DIR) + "/cocycles/" + name; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "holsh_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config hash ignores output path and job count only") {
  ExperimentConfig a;
  a.subcommand = "exponent";
  ExperimentConfig b = a;
  b.output = "elsewhere.csv";
  b.jobs = 8;
  CHECK(a.hash() == b.hash());
  b.seed = 2;
  CHECK(a.hash() != b.hash());
  CHECK(a.hash().size() == 16);
}

TEST_CASE("JSON config round trips and rejects unknown keys") {
  ExperimentConfig a;
  a.subcommand = "cocycle";
  a.window = pseudo::WindowRule::fixed(123);
  a.theta_min = 0.25;
  const ExperimentConfig b = merge_json(ExperimentConfig{}, a.to_json());
  CHECK(b.hash() == a.hash());
  CHECK_THROWS_AS(merge_json(ExperimentConfig{}, nlohmann::json{{"colour", 1}}), ConfigError);
  CHECK_THROWS_AS(merge_json(ExperimentConfig{}, nlohmann::json{{"seed", "many"}}), ConfigError);
}

TEST_CASE("grid validation") {
  GridSpec g;
  g.points = 0;
  CHECK_THROWS_AS(g.values(), ConfigError);
  g.points = 3;
  g.start = 1e-3;
  g.stop = 1e-6;
  try {
    g.values();
    FAIL("expected an invalid grid");
  } catch (const ConfigError& e) {
    CHECK(e.code() == kInvalidGrid);
  }
  g.start = 0.1;
  g.stop = 0.3;
  g.geometric = false;
  const auto v = g.values();
  CHECK(v[1] == doctest::Approx(0.2));
}

TEST_CASE("distinct exit codes for configuration problems") {
  CHECK(invoke({"shadow", "--map", "tent"}).code == kConfigError);
  CHECK(invoke({"exponent", "--d-points", "0"}).code == kInvalidGrid);
  CHECK(invoke({"cocycle", "--op", "fit", "--N-grid", "10,5,20,40", "--file", data("identity_1d.coc")}).code ==
        kInvalidGrid);
  CHECK(invoke({"circle-verify", "--runs", "5", "--output", "/nonexistent/dir/out.csv"}).code == kUnwritableOutput);
  CHECK(invoke({"cocycle", "--op", "frobnicate", "--file", data("identity_1d.coc")}).code == kConfigError);
  CHECK(invoke({"nosuch"}).code == kConfigError);
  CHECK(invoke({"shadow", "--config", "/nonexistent.json"}).code == kConfigError);
}

TEST_CASE("cocycle Q on the identity file") {
  const auto r = invoke({"cocycle", "--file", data("identity_1d.coc"), "--op", "Q", "--N", "10"});
  CHECK(r.code == kPass);
  CHECK(r.out.find("Q_hat=5\n") != std::string::npos);
}

TEST_CASE("cat map Property A verdict") {
  const auto r = invoke({"dichotomy", "--map", "cat", "--check", "property-a"});
  CHECK(r.code == kPass);
  CHECK(r.out.find("verdict=hyperbolic-like") != std::string::npos);
  const auto id = invoke({"dichotomy", "--map", "identity", "--check", "property-a"});
  CHECK(id.code == kFail);
}

TEST_CASE("dichotomy checks on cocycle files") {
  CHECK(invoke({"dichotomy", "--file", data("cat.coc"), "--check", "transversality"}).code == kPass);
  const auto t = invoke({"dichotomy", "--file", data("expand_then_contract_1d.coc"), "--check", "trichotomy",
                         "--N", "2"});
  CHECK(t.code == kPass);
  CHECK(t.out.find("case=mixed") != std::string::npos);
  CHECK(invoke({"dichotomy", "--file", data("mixed_1d.coc"), "--check", "transversality"}).code == kFail);
}

TEST_CASE("flags override the config file") {
  const auto cfg = scratch("cfg.json");
  {
    std::ofstream f(cfg);
    f << R"({"map": "cat", "seed": 5, "d": 1e-7, "solver": "newton", "n": 50})";
  }
  const auto dumped = invoke({"shadow", "--config", cfg.string(), "--seed", "9", "--dump-config"});
  REQUIRE(dumped.code == kPass);
  const auto j = nlohmann::json::parse(dumped.out);
  CHECK(j["seed"] == 9);
  CHECK(j["map"] == "cat");
  CHECK(j["solver"] == "newton");
  const auto r = invoke({"shadow", "--config", cfg.string()});
  CHECK(r.code == kPass);
  CHECK(r.out.find("status=ok") != std::string::npos);
}

TEST_CASE("CSV output is byte-identical across runs and carries the config hash") {
  const auto a = scratch("a.csv");
  const auto b = scratch("b.csv");
  const std::vector<std::string> common = {"exponent", "--map", "circle_example", "--d-start", "1e-5", "--d-stop",
                                           "1e-3", "--d-points", "4", "--trials", "2", "--omega", "0.5"};
  auto args = common;
  args.insert(args.end(), {"--output", a.string()});
  const auto ra = invoke(args);
  args = common;
  args.insert(args.end(), {"--output", b.string(), "--jobs", "2"});
  const auto rb = invoke(args);
  REQUIRE(ra.code == kPass);
  REQUIRE(rb.code == kPass);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  const auto hash_line = ra.out.substr(0, ra.out.find('\n'));
  const std::string hash = hash_line.substr(hash_line.find('=') + 1);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "config_hash,map,d,n,trial,solver,status,epsilon");
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind(hash + ",", 0) == 0);
    ++rows;
  }
  CHECK(rows == 8);
}

TEST_CASE("exponent range check decides the exit code") {
  const std::vector<std::string> base = {"exponent", "--d-start", "1e-5", "--d-stop", "1e-3", "--d-points", "4",
                                         "--trials", "2", "--omega", "0.5"};
  auto pass = base;
  pass.insert(pass.end(), {"--theta-min", "0.3", "--theta-max", "0.7"});
  CHECK(invoke(pass).code == kPass);
  auto fail = base;
  fail.insert(fail.end(), {"--theta-min", "0.9"});
  CHECK(invoke(fail).code == kFail);
}

TEST_CASE("bridge and circle-verify subcommands") {
  CHECK(invoke({"circle-verify", "--runs", "20"}).code == kPass);
  CHECK(invoke({"bridge", "--map", "cat", "--op", "lift", "--runs", "20"}).code == kPass);
  CHECK(invoke({"bridge", "--map", "henon", "--op", "residual", "--runs", "20"}).code == kPass);
  const auto g = invoke({"bridge", "--map", "identity", "--op", "growth", "--trials", "1", "--N-grid", "4,8,16,32"});
  CHECK(g.code == kPass);
  CHECK(g.out.find("gamma_max=1") != std::string::npos);
}

TEST_CASE("cocycle export writes a readable file") {
  const auto path = scratch("cat_export.coc");
  const auto r = invoke({"cocycle", "--map", "cat", "--op", "export", "--N", "20", "--N-grid", "5,10,15,20",
                         "--output", path.string()});
  REQUIRE(r.code == kPass);
  const auto info = invoke({"cocycle", "--file", path.string()});
  CHECK(info.code == kPass);
  CHECK(info.out.find("k1=19") != std::string::npos);
}

}
