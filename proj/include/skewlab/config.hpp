#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewlab/json_io.hpp"
#include "skewlab/system.hpp"

namespace skewlab {

struct CurveParams {
  double h_max = 1e-3;
  double seed_len = 12.0;
  int evolve_steps = 2;
  long node_cap = 4000000;
  int rho_depth = 40;   // backward truncation for the reference density
  int rho_extra = 20;   // extra pullback depth seeding the direction recursion
};

struct RunParams {
  long n = 1000000;
  long burn_in = 1000;
  int n_seeds = 32;
  int bins = 64;
  int cc_domains = 100;
};

struct WeakParams {
  int grid_min_log2 = 10;
  int grid_max_log2 = 13;
  std::vector<double> secant_scales{1e-1, 1e-2, 1e-3};
  long cloud_points = 2000000;
  long pair_budget = 50000000;
  // Perturbation amplitude for the secant cloud and slab scatter; the
  // system's own delta drives the Birkhoff checks and the graph transform.
  double probe_delta = 0.05;
};

struct RareParams {
  std::vector<double> eps_ladder{0.4, 0.2, 0.1, 0.05};
  double i_minus_radius = 0.1;  // fixed interval for the mass statistic
  long total_steps = 10000000;  // orbit-cloud budget per epsilon
  int survivor_grid = 512;
  int survivor_steps = 50;
};

struct ExperimentConfig {
  std::string experiment;  // label echoed into the manifest
  SystemSpec system;
  std::uint64_t seed = 12345;
  int threads = 0;  // 0 = all hardware threads
  int shards = 64;
  std::string out_dir = "out";
  CurveParams curve;
  RunParams run;
  WeakParams weak;
  RareParams rare;
};

ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::string& path);
Json config_to_json(const ExperimentConfig& c);

}  // namespace skewlab
