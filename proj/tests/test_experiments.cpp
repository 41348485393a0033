#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "skewlab/anosov.hpp"
#include "skewlab/config.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/experiments.hpp"
#include "skewlab/fiber.hpp"
#include "skewlab/graph_transform.hpp"
#include "skewlab/histogram.hpp"
#include "skewlab/json_io.hpp"
#include "skewlab/manifest.hpp"
#include "skewlab/rotation.hpp"
#include "skewlab/secant_probe.hpp"
#include "skewlab/sha256.hpp"
#include "skewlab/system.hpp"

using namespace skewlab;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = name;
  std::ofstream out(path);
  out << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(SKEWLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

ExperimentConfig tame_config() {
  ExperimentConfig cfg;
  cfg.system.anosov = anosov_family(2);
  cfg.system.fiber = sine_fiber(0.8);
  cfg.system.rotation = no_rotation();
  cfg.system.delta = 1e-3;
  cfg.seed = 777;
  return cfg;
}

}  // namespace

TEST_CASE("graph transform: zero perturbation gives the zero section") {
  ExperimentConfig cfg = tame_config();
  GraphTransformResult res = graph_transform_ladder(cfg.system, 0.0, 5, 7);
  REQUIRE(res.levels.size() == 3);
  for (const auto& lv : res.levels) {
    CHECK(lv.sup_abs_h == 0.0);
    CHECK(lv.max_slope == 0.0);
    CHECK(lv.final_change < 1e-10);
  }
  for (double v : res.h) CHECK(v == 0.0);
}

TEST_CASE("graph transform: tame fiber converges and stabilizes") {
  ExperimentConfig cfg = tame_config();
  GraphTransformResult res = graph_transform_ladder(cfg.system, cfg.system.delta, 6, 8);
  REQUIRE(res.levels.size() == 3);
  CHECK(res.grid == 256);
  CHECK(res.h.size() == 256u * 256u);
  for (const auto& lv : res.levels) {
    CHECK(lv.final_change < 1e-10);
    CHECK(lv.iters < 10000);
    CHECK(lv.sup_abs_h > 0.0);
    CHECK(lv.sup_abs_h < 0.05);
  }
  double s0 = res.levels[1].max_slope;
  double s1 = res.levels[2].max_slope;
  CHECK(s1 > 0.0);
  CHECK(std::fabs(s1 - s0) / s0 < 0.25);
}

TEST_CASE("secant probe on synthetic clouds") {
  // A vertical pair: same base point, different heights.
  std::vector<Point3> vertical = {
      {0.1, 0.1, 0.1}, {0.1, 0.1, 0.4}, {0.7, 0.7, 0.2}};
  auto r = secant_probe(vertical, {0.2}, 1000);
  REQUIRE(r.size() == 1);
  CHECK(r[0].min_angle_deg == 0.0);
  CHECK(r[0].pairs_tested >= 1);

  // A flat cloud never tilts toward the fiber axis.
  std::vector<Point3> flat;
  for (int i = 0; i < 50; ++i) flat.push_back({0.01 * i, 0.02 * i, 0.5});
  auto rf = secant_probe(flat, {0.1}, 100000);
  CHECK(rf[0].min_angle_deg == 90.0);
  CHECK(rf[0].pairs_tested > 0);

  // A 45 degree secant.
  std::vector<Point3> diag = {{0.0, 0.0, 0.0}, {0.1, 0.0, 0.1}};
  auto rd = secant_probe(diag, {0.15}, 1000);
  CHECK(std::fabs(rd[0].min_angle_deg - 45.0) < 1e-9);

  CHECK_THROWS_AS(secant_probe(diag, {0.6}, 1000), ConfigError);
  CHECK_THROWS_AS(secant_probe(diag, {0.0}, 1000), ConfigError);
  std::vector<Point3> lonely = {{0.1, 0.1, 0.1}};
  CHECK_THROWS_AS(secant_probe(lonely, {0.1}, 1000), ConfigError);
}

TEST_CASE("config parsing: round trip, strict keys, ranges") {
  std::string good = R"({
    "experiment": "demo",
    "system": {
      "anosov": {"n": 10},
      "fiber": {"family": "projective", "lambda": 0.4},
      "rotation": {"variant": "smooth", "s": 0.5},
      "delta": 0.0
    },
    "seed": 42,
    "threads": 2,
    "shards": 16,
    "out_dir": "demo_out",
    "run": {"n": 5000, "burn_in": 50, "n_seeds": 4, "bins": 32, "cc_domains": 10}
  })";
  std::string path = write_temp("cfg_good_tmp.json", good);
  ExperimentConfig cfg = load_config(path);
  std::remove(path.c_str());
  CHECK(cfg.experiment == "demo");
  CHECK(cfg.seed == 42);
  CHECK(cfg.threads == 2);
  CHECK(cfg.shards == 16);
  CHECK(cfg.out_dir == "demo_out");
  CHECK(cfg.run.n == 5000);
  CHECK(cfg.run.bins == 32);
  CHECK(cfg.system.anosov.m11 == 10);
  CHECK(cfg.system.fiber.family == FiberFamily::Projective);
  CHECK(cfg.system.rotation.variant == RotationVariant::Smooth);

  Json echo = config_to_json(cfg);
  ExperimentConfig cfg2 = config_from_json(echo);
  CHECK(config_to_json(cfg2) == echo);

  auto expect_config_error = [](const std::string& text) {
    Json j = Json::parse(text);
    CHECK_THROWS_AS(config_from_json(j), ConfigError);
  };
  // Unknown keys, at the top level and nested.
  expect_config_error(R"({"system": {"anosov": {"n": 2}, "fiber": {"family": "sine", "kappa": 0.5},
    "rotation": {"variant": "none"}}, "bogus": 1})");
  expect_config_error(R"({"system": {"anosov": {"n": 2}, "fiber": {"family": "sine", "kappa": 0.5},
    "rotation": {"variant": "none"}}, "run": {"n": 100, "turbo": true}})");
  // Missing system.
  expect_config_error(R"({"experiment": "x"})");
  // Range violations.
  expect_config_error(R"({"system": {"anosov": {"n": 2}, "fiber": {"family": "sine", "kappa": 0.5},
    "rotation": {"variant": "none"}}, "weak": {"grid_max_log2": 20}})");
  expect_config_error(R"({"system": {"anosov": {"n": 2}, "fiber": {"family": "sine", "kappa": 0.5},
    "rotation": {"variant": "none"}}, "rare": {"i_minus_radius": 0.6}})");
  expect_config_error(R"({"system": {"anosov": {"n": 2}, "fiber": {"family": "sine", "kappa": 0.5},
    "rotation": {"variant": "none"}}, "seed": -3})");
  // System-level: delta too large for the fiber contraction.
  expect_config_error(R"({"system": {"anosov": {"n": 2}, "fiber": {"family": "sine", "kappa": 0.4},
    "rotation": {"variant": "none"}, "delta": 0.2}})");
}

TEST_CASE("lyapunov sweep is thread-count invariant") {
  ExperimentConfig cfg = tame_config();
  cfg.run.n = 2000;
  cfg.run.burn_in = 100;
  cfg.run.n_seeds = 8;

  cfg.threads = 1;
  auto rows1 = lyapunov_sweep(cfg);
  cfg.threads = 8;
  auto rows8 = lyapunov_sweep(cfg);
  REQUIRE(rows1.size() == 8);
  REQUIRE(rows8.size() == 8);
  for (std::size_t k = 0; k < rows1.size(); ++k) {
    for (int j = 0; j < 3; ++j) {
      CHECK(rows1[k].exponents[j] == rows8[k].exponents[j]);
      CHECK(rows1[k].stderrs[j] == rows8[k].stderrs[j]);
    }
  }

  write_lyapunov_csv(rows1, "lyap_t1_tmp.csv");
  write_lyapunov_csv(rows8, "lyap_t8_tmp.csv");
  CHECK(slurp("lyap_t1_tmp.csv") == slurp("lyap_t8_tmp.csv"));
  std::remove("lyap_t1_tmp.csv");
  std::remove("lyap_t8_tmp.csv");
}

TEST_CASE("rare orbit accumulation is thread-count invariant") {
  ExperimentConfig cfg;
  cfg.system.anosov = anosov_family(2);
  cfg.system.fiber = projective_fiber(0.25);
  cfg.system.rotation = rare_rotation(0.1, 0.3);
  cfg.seed = 2024;
  cfg.shards = 8;
  cfg.run.burn_in = 100;
  cfg.rare.total_steps = 20000;
  cfg.run.bins = 16;

  cfg.threads = 1;
  EmpiricalMeasure3 m1 = rare_orbit_measure(cfg, cfg.system, 0);
  cfg.threads = 8;
  EmpiricalMeasure3 m8 = rare_orbit_measure(cfg, cfg.system, 0);
  CHECK(m1.total == 20000.0);
  CHECK(m8.total == m1.total);
  REQUIRE(m1.w.size() == m8.w.size());
  for (std::size_t i = 0; i < m1.w.size(); ++i) CHECK(m1.w[i] == m8.w[i]);
}

TEST_CASE("manifest records content hashes of the outputs") {
  std::string dir = "manifest_tmp_out";
  ensure_dir(dir);
  std::string payload = "epsilon,mass\n0.1,0.5\n";
  write_temp(dir + "/sample.csv", payload);

  ExperimentConfig cfg = tame_config();
  cfg.out_dir = dir;
  write_manifest(dir, "lyapunov", cfg, 1.5, {"sample.csv"});

  Json man = parse_json_file(dir + "/manifest.json");
  CHECK(man["command"] == "lyapunov");
  CHECK(man["schema"] == 1);
  REQUIRE(man["outputs"].size() == 1);
  CHECK(man["outputs"][0]["path"] == "sample.csv");
  CHECK(man["outputs"][0]["sha256"] == sha256_hex(payload));
  CHECK(man["outputs"][0]["bytes"] == static_cast<long>(payload.size()));
  CHECK(man["config"]["system"]["delta"] == 1e-3);
  std::remove((dir + "/sample.csv").c_str());
  std::remove((dir + "/manifest.json").c_str());
}

TEST_CASE("cli exit codes") {
  std::string cfgdir = SKEWLAB_CONFIG_DIR;

  // 2: unreadable or malformed configuration.
  CHECK(run_cli("lyapunov --config no_such_file.json") == 2);
  std::string bad = write_temp("cli_bad_tmp.json", "{ not json");
  CHECK(run_cli("lyapunov --config " + bad) == 2);
  std::remove(bad.c_str());

  // 0: assumption check passes on the reference configuration.
  CHECK(run_cli("check-assumptions --config " + cfgdir +
                "/n10.json --out cli_out_n10") == 0);

  // 3: the uncoupled product fails both assumption sets, and the regular
  // coupling driver refuses to run on it.
  CHECK(run_cli("check-assumptions --config " + cfgdir +
                "/uncoupled.json --out cli_out_unc") == 3);
  CHECK(run_cli("srb --config " + cfgdir + "/uncoupled.json --out cli_out_unc") == 3);
}
