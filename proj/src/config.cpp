#include "skewlab/config.hpp"

#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

double get_num(const Json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(where + ": \"" + key + "\" must be a number");
  return j[key].get<double>();
}

long get_long(const Json& j, const char* key, long fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ConfigError(where + ": \"" + key + "\" must be an integer");
  return j[key].get<long>();
}

int get_int(const Json& j, const char* key, int fallback, const std::string& where) {
  long v = get_long(j, key, fallback, where);
  return static_cast<int>(v);
}

std::vector<double> get_num_list(const Json& j, const char* key,
                                 std::vector<double> fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_array()) throw ConfigError(where + ": \"" + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw ConfigError(where + ": \"" + key + "\" entries must be numbers");
    out.push_back(v.get<double>());
  }
  if (out.empty()) throw ConfigError(where + ": \"" + key + "\" must be nonempty");
  return out;
}

CurveParams curve_from_json(const Json& j) {
  require_keys(j, {"h_max", "seed_len", "evolve_steps", "node_cap", "rho_depth", "rho_extra"},
               "curve");
  CurveParams c;
  c.h_max = get_num(j, "h_max", c.h_max, "curve");
  c.seed_len = get_num(j, "seed_len", c.seed_len, "curve");
  c.evolve_steps = get_int(j, "evolve_steps", c.evolve_steps, "curve");
  c.node_cap = get_long(j, "node_cap", c.node_cap, "curve");
  c.rho_depth = get_int(j, "rho_depth", c.rho_depth, "curve");
  c.rho_extra = get_int(j, "rho_extra", c.rho_extra, "curve");
  if (!(c.h_max > 0.0) || !(c.seed_len > 0.0) || c.evolve_steps < 0 || c.node_cap < 16 ||
      c.rho_depth < 1 || c.rho_extra < 0) {
    throw ConfigError("curve: parameter out of range");
  }
  return c;
}

RunParams run_from_json(const Json& j) {
  require_keys(j, {"n", "burn_in", "n_seeds", "bins", "cc_domains"}, "run");
  RunParams r;
  r.n = get_long(j, "n", r.n, "run");
  r.burn_in = get_long(j, "burn_in", r.burn_in, "run");
  r.n_seeds = get_int(j, "n_seeds", r.n_seeds, "run");
  r.bins = get_int(j, "bins", r.bins, "run");
  r.cc_domains = get_int(j, "cc_domains", r.cc_domains, "run");
  if (r.n < 100 || r.burn_in < 0 || r.n_seeds < 1 || r.bins < 2 || r.cc_domains < 1) {
    throw ConfigError("run: parameter out of range");
  }
  return r;
}

WeakParams weak_from_json(const Json& j) {
  require_keys(j,
               {"grid_min_log2", "grid_max_log2", "secant_scales", "cloud_points", "pair_budget",
                "probe_delta"},
               "weak");
  WeakParams w;
  w.grid_min_log2 = get_int(j, "grid_min_log2", w.grid_min_log2, "weak");
  w.grid_max_log2 = get_int(j, "grid_max_log2", w.grid_max_log2, "weak");
  w.secant_scales = get_num_list(j, "secant_scales", w.secant_scales, "weak");
  w.cloud_points = get_long(j, "cloud_points", w.cloud_points, "weak");
  w.pair_budget = get_long(j, "pair_budget", w.pair_budget, "weak");
  w.probe_delta = get_num(j, "probe_delta", w.probe_delta, "weak");
  if (w.grid_min_log2 < 3 || w.grid_max_log2 < w.grid_min_log2 || w.grid_max_log2 > 14 ||
      w.cloud_points < 1000 || w.pair_budget < 1000 || !(w.probe_delta >= 0.0)) {
    throw ConfigError("weak: parameter out of range");
  }
  return w;
}

RareParams rare_from_json(const Json& j) {
  require_keys(j,
               {"eps_ladder", "i_minus_radius", "total_steps", "survivor_grid", "survivor_steps"},
               "rare");
  RareParams r;
  r.eps_ladder = get_num_list(j, "eps_ladder", r.eps_ladder, "rare");
  r.i_minus_radius = get_num(j, "i_minus_radius", r.i_minus_radius, "rare");
  r.total_steps = get_long(j, "total_steps", r.total_steps, "rare");
  r.survivor_grid = get_int(j, "survivor_grid", r.survivor_grid, "rare");
  r.survivor_steps = get_int(j, "survivor_steps", r.survivor_steps, "rare");
  if (!(r.i_minus_radius > 0.0) || r.i_minus_radius >= 0.5 || r.total_steps < 1000 ||
      r.survivor_grid < 8 || r.survivor_steps < 1) {
    throw ConfigError("rare: parameter out of range");
  }
  for (double e : r.eps_ladder) {
    if (!(e > 0.0) || e >= 1.0) throw ConfigError("rare: eps_ladder entries must be in (0,1)");
  }
  return r;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  require_keys(j,
               {"experiment", "system", "seed", "threads", "shards", "out_dir", "curve", "run",
                "weak", "rare"},
               "config");
  ExperimentConfig c;
  if (j.contains("experiment")) {
    if (!j["experiment"].is_string()) throw ConfigError("config: \"experiment\" must be a string");
    c.experiment = j["experiment"].get<std::string>();
  }
  if (!j.contains("system")) throw ConfigError("config: missing \"system\"");
  c.system = system_from_json(j["system"]);
  long seed = get_long(j, "seed", static_cast<long>(c.seed), "config");
  if (seed < 0) throw ConfigError("config: \"seed\" must be nonnegative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.threads = get_int(j, "threads", c.threads, "config");
  c.shards = get_int(j, "shards", c.shards, "config");
  if (c.threads < 0 || c.shards < 1) throw ConfigError("config: threads/shards out of range");
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string()) throw ConfigError("config: \"out_dir\" must be a string");
    c.out_dir = j["out_dir"].get<std::string>();
  }
  if (j.contains("curve")) c.curve = curve_from_json(j["curve"]);
  if (j.contains("run")) c.run = run_from_json(j["run"]);
  if (j.contains("weak")) c.weak = weak_from_json(j["weak"]);
  if (j.contains("rare")) c.rare = rare_from_json(j["rare"]);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  return config_from_json(parse_json_file(path));
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = c.experiment;
  j["system"] = system_to_json(c.system);
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["shards"] = c.shards;
  j["out_dir"] = c.out_dir;
  j["curve"] = {{"h_max", c.curve.h_max},         {"seed_len", c.curve.seed_len},
                {"evolve_steps", c.curve.evolve_steps}, {"node_cap", c.curve.node_cap},
                {"rho_depth", c.curve.rho_depth}, {"rho_extra", c.curve.rho_extra}};
  j["run"] = {{"n", c.run.n},
              {"burn_in", c.run.burn_in},
              {"n_seeds", c.run.n_seeds},
              {"bins", c.run.bins},
              {"cc_domains", c.run.cc_domains}};
  j["weak"] = {{"grid_min_log2", c.weak.grid_min_log2},
               {"grid_max_log2", c.weak.grid_max_log2},
               {"secant_scales", c.weak.secant_scales},
               {"cloud_points", c.weak.cloud_points},
               {"pair_budget", c.weak.pair_budget},
               {"probe_delta", c.weak.probe_delta}};
  j["rare"] = {{"eps_ladder", c.rare.eps_ladder},
               {"i_minus_radius", c.rare.i_minus_radius},
               {"total_steps", c.rare.total_steps},
               {"survivor_grid", c.rare.survivor_grid},
               {"survivor_steps", c.rare.survivor_steps}};
  return j;
}

}  // namespace skewlab
