#pragma once

#include <string>
#include <vector>

#include "skewlab/config.hpp"
#include "skewlab/curve.hpp"
#include "skewlab/histogram.hpp"
#include "skewlab/json_io.hpp"
#include "skewlab/lyapunov.hpp"

namespace skewlab {

struct DriverResult {
  Json report;
  std::vector<std::string> outputs;     // files written inside cfg.out_dir
  std::vector<std::string> violations;  // failed properties, empty on a clean run
  std::vector<std::string> warnings;
};

DriverResult run_check_assumptions(const ExperimentConfig& cfg);
DriverResult run_lyapunov(const ExperimentConfig& cfg);
DriverResult run_cc_check(const ExperimentConfig& cfg);
DriverResult run_regular_coupling(const ExperimentConfig& cfg);
DriverResult run_weak_coupling(const ExperimentConfig& cfg);
DriverResult run_rare_interaction(const ExperimentConfig& cfg);
DriverResult run_curve_dump(const ExperimentConfig& cfg);

// Building blocks shared with the test suite.
UnstableCurve seed_reference_curve(const ExperimentConfig& cfg);
UnstableCurve grow_reference_curve(const ExperimentConfig& cfg);
std::vector<LyapunovEstimate> lyapunov_sweep(const ExperimentConfig& cfg);
void write_lyapunov_csv(const std::vector<LyapunovEstimate>& rows, const std::string& path);

// Sharded orbit-cloud accumulation for one epsilon of the rare sweep;
// deterministic for fixed (cfg.seed, eps_index) regardless of thread count.
EmpiricalMeasure3 rare_orbit_measure(const ExperimentConfig& cfg, const SystemSpec& spec_eps,
                                     int eps_index);

std::vector<Point3> probe_cloud(const ExperimentConfig& cfg, const SystemSpec& probe_sys);

void write_json_file(const std::string& path, const Json& j);

}  // namespace skewlab
