#include "skewlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "skewlab/assumptions.hpp"
#include "skewlab/birkhoff.hpp"
#include "skewlab/cone.hpp"
#include "skewlab/csv.hpp"
#include "skewlab/density.hpp"
#include "skewlab/domains.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/graph_transform.hpp"
#include "skewlab/manifest.hpp"
#include "skewlab/observables.hpp"
#include "skewlab/parallel.hpp"
#include "skewlab/rng.hpp"
#include "skewlab/secant_probe.hpp"

namespace skewlab {

namespace {

// Fixed RNG stream ids so every driver draws independent, reproducible
// randomness from one config seed.
constexpr std::uint64_t kStreamCurveSeed = 7;
constexpr std::uint64_t kStreamBirkhoff = 100;    // + start index
constexpr std::uint64_t kStreamProbeCloud = 200;
constexpr std::uint64_t kStreamLyapunov = 1000;   // + seed index
constexpr std::uint64_t kStreamCentral = 40000;   // + eps index
constexpr std::uint64_t kStreamRare = 50000;      // + 1000*eps index + shard

class CsvFile {
 public:
  CsvFile(const std::string& path, const char* header) : f_(std::fopen(path.c_str(), "w")) {
    if (!f_) throw Error("cannot open " + path + " for writing");
    std::fprintf(f_, "%s\n", header);
  }
  ~CsvFile() {
    if (f_) std::fclose(f_);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::fprintf(f_, "%s%s", i ? "," : "", cells[i].c_str());
    }
    std::fprintf(f_, "\n");
  }

 private:
  FILE* f_;
};

std::string num_s(double v) { return fmt_g17(v); }
std::string int_s(long v) { return std::to_string(v); }

std::string eps_tag(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

double log_alpha_u(const SystemSpec& s) { return std::log(eigendata(s.anosov).alpha_u); }

void append_violation(DriverResult& r, const std::string& msg) { r.violations.push_back(msg); }

}  // namespace

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

UnstableCurve seed_reference_curve(const ExperimentConfig& cfg) {
  auto rng = stream_rng(cfg.seed, kStreamCurveSeed);
  Point3 p = random_point3(rng);
  return seed_unstable_segment(cfg.system, p, cfg.curve.seed_len, cfg.curve.h_max);
}

UnstableCurve grow_reference_curve(const ExperimentConfig& cfg) {
  UnstableCurve c = seed_reference_curve(cfg);
  if (cfg.curve.evolve_steps > 0) {
    c = evolve_and_refine(cfg.system, c, cfg.curve.evolve_steps, cfg.curve.node_cap);
  }
  return c;
}

std::vector<LyapunovEstimate> lyapunov_sweep(const ExperimentConfig& cfg) {
  std::vector<LyapunovEstimate> rows(cfg.run.n_seeds);
  parallel_shards(static_cast<std::size_t>(cfg.run.n_seeds),
                  resolve_threads(static_cast<unsigned>(cfg.threads)), [&](std::size_t k) {
                    auto rng = stream_rng(cfg.seed, kStreamLyapunov + k);
                    Point3 p0 = random_point3(rng);
                    rows[k] = lyapunov_spectrum_qr(cfg.system, p0, cfg.run.n, cfg.run.burn_in);
                  });
  return rows;
}

void write_lyapunov_csv(const std::vector<LyapunovEstimate>& rows, const std::string& path) {
  CsvFile csv(path, "seed_index,lambda1,lambda2,lambda3,se1,se2,se3,n");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    csv.row({int_s(static_cast<long>(k)), num_s(r.exponents[0]), num_s(r.exponents[1]),
             num_s(r.exponents[2]), num_s(r.stderrs[0]), num_s(r.stderrs[1]),
             num_s(r.stderrs[2]), int_s(r.n)});
  }
}

DriverResult run_check_assumptions(const ExperimentConfig& cfg) {
  DriverResult res;
  AssumptionsReportA a = check_assumptions_A(cfg.system);
  AssumptionsReportB b = check_assumptions_B(cfg.system);
  res.report["assumptions_a"] = report_to_json(a);
  res.report["assumptions_b"] = report_to_json(b);
  res.report["either_passes"] = a.all_pass() || b.all_pass();
  ensure_dir(cfg.out_dir);
  write_json_file(cfg.out_dir + "/assumptions.json", res.report);
  res.outputs.push_back("assumptions.json");
  return res;
}

DriverResult run_lyapunov(const ExperimentConfig& cfg) {
  DriverResult res;
  ensure_dir(cfg.out_dir);
  auto rows = lyapunov_sweep(cfg);
  write_lyapunov_csv(rows, cfg.out_dir + "/lyapunov.csv");
  res.outputs.push_back("lyapunov.csv");

  double la = log_alpha_u(cfg.system);
  Json jr = Json::array();
  for (const auto& r : rows) jr.push_back(report_to_json(r));
  res.report["spectra"] = jr;
  res.report["log_alpha_u"] = la;
  if (cfg.system.delta == 0.0) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (std::fabs(rows[k].exponents[0] - la) > 1e-4) {
        append_violation(res, "seed " + std::to_string(k) +
                                  ": top exponent deviates from log alpha_u by " +
                                  num_s(std::fabs(rows[k].exponents[0] - la)));
      }
    }
  }
  return res;
}

namespace {

struct CCDomainScan {
  std::vector<std::size_t> picked;  // indices into the domain list
  std::vector<double> values;
};

CCDomainScan scan_cc_domains(const ExperimentConfig& cfg, const UnstableCurve& curve,
                             const std::vector<FundamentalDomain>& domains) {
  CCDomainScan out;
  std::size_t want = static_cast<std::size_t>(cfg.run.cc_domains);
  std::size_t have = domains.size();
  if (have == 0) return out;
  std::size_t take = std::min(want, have);
  for (std::size_t i = 0; i < take; ++i) out.picked.push_back(i * have / take);
  out.values.assign(take, 0.0);
  parallel_shards(take, resolve_threads(static_cast<unsigned>(cfg.threads)), [&](std::size_t i) {
    out.values[i] = cc_integral(cfg.system, curve, domains[out.picked[i]], cfg.curve.rho_depth);
  });
  return out;
}

}  // namespace

DriverResult run_cc_check(const ExperimentConfig& cfg) {
  AssumptionsReportA a = check_assumptions_A(cfg.system);
  if (!a.all_pass()) {
    const ClauseReport& bad = !a.a1.pass ? a.a1 : (!a.a2.pass ? a.a2 : a.a3);
    throw AssumptionError("cc-check: " + bad.id + " fails (" + bad.detail + ")");
  }
  DriverResult res;
  ensure_dir(cfg.out_dir);

  CCSufficient ccs = cc_sufficient_lhs(cfg.system);
  res.report["cc_sufficient"] = report_to_json(ccs);
  if (ccs.value >= 0.0) {
    res.warnings.push_back("cc_sufficient_lhs is nonnegative: CC unproven by the sufficient "
                           "condition, domain integrals may still be negative");
  }

  UnstableCurve curve = grow_reference_curve(cfg);
  auto domains = fundamental_domains(curve);
  auto scan = scan_cc_domains(cfg, curve, domains);
  if (scan.values.empty()) {
    append_violation(res, "curve spans " + num_s(curve.span()) + " turns: no fundamental domains");
  }
  if (scan.values.size() < static_cast<std::size_t>(cfg.run.cc_domains)) {
    res.warnings.push_back("only " + std::to_string(scan.values.size()) + " of " +
                           std::to_string(cfg.run.cc_domains) + " requested domains available");
  }

  {
    CsvFile csv(cfg.out_dir + "/cc_domains.csv", "domain,first_node,last_node,nodes,cc_integral");
    for (std::size_t i = 0; i < scan.values.size(); ++i) {
      const auto& d = domains[scan.picked[i]];
      csv.row({int_s(static_cast<long>(scan.picked[i])), int_s(static_cast<long>(d.first)),
               int_s(static_cast<long>(d.last)), int_s(static_cast<long>(d.last - d.first + 1)),
               num_s(scan.values[i])});
    }
    res.outputs.push_back("cc_domains.csv");
  }

  long nonneg = 0;
  double vmax = -1e300, vmin = 1e300;
  for (std::size_t i = 0; i < scan.values.size(); ++i) {
    double v = scan.values[i];
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
    if (v >= 0.0) {
      ++nonneg;
      append_violation(res, "cc_integral >= 0 on domain " + std::to_string(scan.picked[i]) +
                                ": " + num_s(v));
    }
  }
  res.report["cc_domains"] = {{"sampled", scan.values.size()},
                              {"available", domains.size()},
                              {"max_value", scan.values.empty() ? 0.0 : vmax},
                              {"min_value", scan.values.empty() ? 0.0 : vmin},
                              {"n_nonnegative", nonneg}};
  write_json_file(cfg.out_dir + "/cc_report.json", res.report);
  res.outputs.push_back("cc_report.json");
  return res;
}

DriverResult run_regular_coupling(const ExperimentConfig& cfg) {
  AssumptionsReportA a = check_assumptions_A(cfg.system);
  if (!a.all_pass()) {
    const ClauseReport& bad = !a.a1.pass ? a.a1 : (!a.a2.pass ? a.a2 : a.a3);
    throw AssumptionError("srb: " + bad.id + " fails (" + bad.detail + ")");
  }
  if (cfg.system.delta != 0.0) {
    throw ConfigError("srb: the construction runs on the exact skew product (delta = 0)");
  }
  DriverResult res;
  ensure_dir(cfg.out_dir);
  res.report["assumptions_a"] = report_to_json(a);

  ConeParams cp = cone_params(cfg.system);
  ConeCheck cone = verify_cone(cfg.system, 100000, cfg.seed + 11);
  double c0 = cone_growth_constant(cfg.system, 1000, 30, cfg.seed + 13);
  res.report["cone"] = report_to_json(cone);
  res.report["cone"]["a"] = cp.a;
  res.report["cone"]["b"] = cp.b;
  res.report["cone_growth_c0"] = c0;
  if (cone.violations > 0) {
    append_violation(res, std::to_string(cone.violations) + " cone violations in 100000 samples");
  }
  if (!(cone.sigma_observed > 0.0)) append_violation(res, "sigma_observed is not positive");
  if (!(c0 > 0.1)) append_violation(res, "cone growth constant c0 = " + num_s(c0) + " <= 0.1");

  CCSufficient ccs = cc_sufficient_lhs(cfg.system);
  res.report["cc_sufficient"] = report_to_json(ccs);
  res.report["cc_proven_by_sufficient"] = ccs.value < 0.0;
  if (ccs.value >= 0.0) {
    res.warnings.push_back("cc_sufficient_lhs nonnegative: CC unproven, continuing");
  }

  UnstableCurve curve = grow_reference_curve(cfg);
  res.report["curve"] = {{"nodes", curve.nodes.size()},
                         {"length", curve.length()},
                         {"span", curve.span()}};
  auto domains = fundamental_domains(curve);
  auto scan = scan_cc_domains(cfg, curve, domains);
  long nonneg = 0;
  double vmax = -1e300;
  for (std::size_t i = 0; i < scan.values.size(); ++i) {
    vmax = std::max(vmax, scan.values[i]);
    if (scan.values[i] >= 0.0) ++nonneg;
  }
  if (scan.values.empty()) {
    append_violation(res, "no fundamental domains on the grown curve");
  } else if (nonneg > 0) {
    append_violation(res, std::to_string(nonneg) + " sampled domains with cc_integral >= 0");
  }
  res.report["cc_domains"] = {{"sampled", scan.values.size()},
                              {"available", domains.size()},
                              {"max_value", scan.values.empty() ? 0.0 : vmax},
                              {"n_nonnegative", nonneg}};

  {
    std::vector<double> prof = finite_time_central_profile(cfg.system, curve, 60);
    double smax = -1e300, smin = 1e300;
    long above = 0, below = 0;
    for (double v : prof) {
      smax = std::max(smax, v);
      smin = std::min(smin, v);
      if (60.0 * v > std::log(10.0)) ++above;
      if (60.0 * v < std::log(0.1)) ++below;
    }
    double pmax = std::exp(60.0 * smax), pmin = std::exp(60.0 * smin);
    res.report["mixed"] = {{"max_product", pmax},
                           {"min_product", pmin},
                           {"n_above_10", above},
                           {"n_below_0.1", below},
                           {"horizon", 60}};
    if (!(pmax > 10.0 && pmin < 0.1)) {
      append_violation(res, "mixed central behavior not exhibited: max product " + num_s(pmax) +
                                ", min product " + num_s(pmin));
    }
  }

  auto rows = lyapunov_sweep(cfg);
  write_lyapunov_csv(rows, cfg.out_dir + "/lyapunov.csv");
  res.outputs.push_back("lyapunov.csv");
  double la = log_alpha_u(cfg.system);
  long mid_nonneg = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].exponents[1] >= 0.0) ++mid_nonneg;
    if (std::fabs(rows[k].exponents[0] - la) > 1e-4) {
      append_violation(res, "seed " + std::to_string(k) + ": top exponent off log alpha_u");
    }
  }
  if (mid_nonneg > 0) {
    append_violation(res, std::to_string(mid_nonneg) + " seeds with nonnegative middle exponent");
  }
  res.report["lyapunov"] = {{"n_seeds", rows.size()},
                            {"log_alpha_u", la},
                            {"middle_nonnegative", mid_nonneg}};

  {
    UnstableCurve seed = seed_reference_curve(cfg);
    DensityProfile rho = rho_density(cfg.system, seed, cfg.curve.rho_depth, 1e-12,
                                     cfg.curve.rho_extra);
    std::vector<Observable> obs = {builtin_observable("cos_x"), builtin_observable("cos_z"),
                                   builtin_observable("sin_xy")};
    long steps = cfg.run.burn_in + 2000;
    CesaroResult ces = cesaro_pushforward(cfg.system, seed, rho, steps, cfg.run.burn_in,
                                          cfg.run.bins, cfg.run.bins, cfg.run.bins, obs);
    save_histogram(ces.measure, cfg.out_dir + "/histogram.bin");
    write_fiber_marginal_csv(ces.measure, cfg.out_dir + "/fiber_marginal.csv");
    res.outputs.push_back("histogram.bin");
    res.outputs.push_back("fiber_marginal.csv");

    double tv = base_uniformity_tv(ces.measure);
    // The bin-center means must reproduce the histogram contraction exactly up
    // to summation order.
    double cons = 0.0;
    for (std::size_t k = 0; k < obs.size(); ++k) {
      double from_hist = 0.0;
      for (std::size_t bi = 0; bi < ces.measure.w.size(); ++bi) {
        if (ces.measure.w[bi] != 0.0) {
          from_hist += ces.measure.w[bi] * obs[k].fn(ces.measure.bin_center(bi));
        }
      }
      from_hist /= ces.measure.total;
      cons = std::max(cons, std::fabs(from_hist - ces.means_at_centers[k]));
    }
    res.report["cesaro"] = {{"base_tv", tv},
                            {"consistency_max_diff", cons},
                            {"steps", steps},
                            {"means_at_points", ces.means_at_points},
                            {"means_at_centers", ces.means_at_centers}};
    if (tv >= 0.02) append_violation(res, "cesaro base marginal TV " + num_s(tv) + " >= 0.02");
    if (cons > 1e-9) append_violation(res, "cesaro consistency " + num_s(cons) + " > 1e-9");
  }

  write_json_file(cfg.out_dir + "/srb_report.json", res.report);
  res.outputs.push_back("srb_report.json");
  return res;
}

std::vector<Point3> probe_cloud(const ExperimentConfig& cfg, const SystemSpec& probe_sys) {
  auto rng = stream_rng(cfg.seed, kStreamProbeCloud);
  Point3 p = random_point3(rng);
  for (long i = 0; i < cfg.run.burn_in; ++i) p = coupled_apply(probe_sys, p);
  std::vector<Point3> cloud;
  cloud.reserve(cfg.weak.cloud_points);
  for (long i = 0; i < cfg.weak.cloud_points; ++i) {
    cloud.push_back(p);
    p = coupled_apply(probe_sys, p);
  }
  return cloud;
}

DriverResult run_weak_coupling(const ExperimentConfig& cfg) {
  const SystemSpec& s = cfg.system;
  if (s.fiber.family != FiberFamily::Sine) {
    throw ConfigError("weak-geometry: expected the sine fiber family");
  }
  if (s.rotation.variant != RotationVariant::None) {
    throw ConfigError("weak-geometry: expected the uncoupled skeleton (rotation none)");
  }
  DriverResult res;
  ensure_dir(cfg.out_dir);

  EigenData eig = eigendata(s.anosov);
  bool wild = s.fiber.lam_min > eig.alpha_s;
  res.report["dichotomy"] = {{"lam_min", s.fiber.lam_min},
                             {"alpha_s", eig.alpha_s},
                             {"classification", wild ? "wild" : "normally-hyperbolic"}};

  {
    const char* names[3] = {"cos_x", "cos_z", "sin_xy"};
    const int n_starts = 10;
    CsvFile csv(cfg.out_dir + "/birkhoff.csv", "observable,start_index,mean,se,n");
    Json jb = Json::object();
    for (const char* name : names) {
      Observable obs = builtin_observable(name);
      std::vector<BirkhoffStat> stats(n_starts);
      parallel_shards(n_starts, resolve_threads(static_cast<unsigned>(cfg.threads)),
                      [&](std::size_t k) {
                        auto rng = stream_rng(cfg.seed, kStreamBirkhoff + k);
                        Point3 p0 = random_point3(rng);
                        stats[k] = birkhoff_average(s, p0, obs, cfg.run.n, cfg.run.burn_in);
                      });
      double diff = 0.0;
      std::vector<double> means;
      for (int k = 0; k < n_starts; ++k) {
        csv.row({name, int_s(k), num_s(stats[k].mean), num_s(stats[k].se), int_s(stats[k].n)});
        means.push_back(stats[k].mean);
        for (int l = 0; l < k; ++l) diff = std::max(diff, std::fabs(stats[k].mean - stats[l].mean));
      }
      jb[name] = {{"max_pairwise_diff", diff}, {"means", means}};
      if (diff >= 1e-2) {
        append_violation(res, std::string("birkhoff averages of ") + name +
                                  " disagree across starts by " + num_s(diff));
      }
    }
    res.report["birkhoff"] = jb;
    res.outputs.push_back("birkhoff.csv");
  }

  {
    GraphTransformResult graph =
        graph_transform_ladder(s, s.delta, cfg.weak.grid_min_log2, cfg.weak.grid_max_log2);
    CsvFile csv(cfg.out_dir + "/graph_slopes.csv",
                "grid_log2,max_slope,sup_abs_h,iters,final_change");
    Json jl = Json::array();
    for (const auto& lv : graph.levels) {
      csv.row({int_s(lv.grid_log2), num_s(lv.max_slope), num_s(lv.sup_abs_h), int_s(lv.iters),
               num_s(lv.final_change)});
      jl.push_back(report_to_json(lv));
    }
    res.outputs.push_back("graph_slopes.csv");
    const auto& first = graph.levels.front();
    const auto& last = graph.levels.back();
    double growth = first.max_slope > 0.0 ? last.max_slope / first.max_slope : 0.0;
    double stab = 0.0;
    if (graph.levels.size() >= 2) {
      const auto& prev = graph.levels[graph.levels.size() - 2];
      stab = prev.max_slope > 0.0 ? std::fabs(last.max_slope - prev.max_slope) / prev.max_slope
                                  : 0.0;
    }
    res.report["graph"] = {{"levels", jl},
                           {"growth_ratio", growth},
                           {"last_level_change", stab}};
  }

  {
    SystemSpec probe_sys = s;
    probe_sys.delta = cfg.weak.probe_delta;
    validate(probe_sys);
    std::vector<Point3> cloud = probe_cloud(cfg, probe_sys);
    auto secants = secant_probe(cloud, cfg.weak.secant_scales, cfg.weak.pair_budget);
    CsvFile csv(cfg.out_dir + "/secant.csv",
                "scale,min_angle_deg,pairs_tested,ax,ay,az,bx,by,bz");
    Json js = Json::array();
    for (const auto& r : secants) {
      csv.row({num_s(r.scale), num_s(r.min_angle_deg), int_s(r.pairs_tested), num_s(r.p_a.x),
               num_s(r.p_a.y), num_s(r.p_a.z), num_s(r.p_b.x), num_s(r.p_b.y), num_s(r.p_b.z)});
      js.push_back(report_to_json(r));
    }
    res.outputs.push_back("secant.csv");
    res.report["secant"] = js;
    res.report["probe_delta"] = cfg.weak.probe_delta;

    // Attractor cut: points within a thin slab around the center-stable plane
    // of the unperturbed product through base point (1/2, 1/2), plotted in
    // (stable coordinate, fiber) axes.
    const double half_width = 0.005;
    CsvFile slab(cfg.out_dir + "/slab_scatter.csv", "s_coord,z");
    long kept = 0;
    for (const Point3& p : cloud) {
      double dx = lift_delta(p.x, 0.5), dy = lift_delta(p.y, 0.5);
      double u = dx * eig.du.x + dy * eig.du.y;
      if (std::fabs(u) <= half_width) {
        slab.row({num_s(dx * eig.ds.x + dy * eig.ds.y), num_s(p.z)});
        ++kept;
      }
    }
    res.outputs.push_back("slab_scatter.csv");
    res.report["slab_points"] = kept;
  }

  write_json_file(cfg.out_dir + "/weak_report.json", res.report);
  res.outputs.push_back("weak_report.json");
  return res;
}

EmpiricalMeasure3 rare_orbit_measure(const ExperimentConfig& cfg, const SystemSpec& spec_eps,
                                     int eps_index) {
  std::size_t shards = static_cast<std::size_t>(cfg.shards);
  long per = cfg.rare.total_steps / static_cast<long>(shards);
  std::vector<EmpiricalMeasure3> parts(shards);
  parallel_shards(shards, resolve_threads(static_cast<unsigned>(cfg.threads)),
                  [&](std::size_t sh) {
                    long n = per + (sh + 1 == shards
                                        ? cfg.rare.total_steps - per * static_cast<long>(shards)
                                        : 0);
                    auto rng = stream_rng(cfg.seed, kStreamRare + 1000ull * eps_index + sh);
                    Point3 p0 = random_point3(rng);
                    parts[sh] = orbit_measure(spec_eps, p0, n, cfg.run.burn_in, cfg.run.bins,
                                              cfg.run.bins, cfg.run.bins);
                  });
  EmpiricalMeasure3 total = std::move(parts[0]);
  for (std::size_t sh = 1; sh < shards; ++sh) merge(total, parts[sh]);
  return total;
}

DriverResult run_rare_interaction(const ExperimentConfig& cfg) {
  if (cfg.system.rotation.variant != RotationVariant::Rare) {
    throw ConfigError("rare-sweep: rotation variant must be rare");
  }
  if (cfg.system.delta != 0.0) {
    throw ConfigError("rare-sweep: the sweep runs on the exact skew product (delta = 0)");
  }
  DriverResult res;
  ensure_dir(cfg.out_dir);

  CsvFile sweep(cfg.out_dir + "/sweep.csv",
                "epsilon,mass_outside,base_tv,central_exponent,b3_pass,b3_margin");
  CsvFile surv(cfg.out_dir + "/survivor.csv", "epsilon,n,survivor_fraction");
  res.outputs.push_back("sweep.csv");
  res.outputs.push_back("survivor.csv");

  std::vector<double> ran_eps, ran_mass;
  Json sweep_json = Json::array();
  for (std::size_t idx = 0; idx < cfg.rare.eps_ladder.size(); ++idx) {
    double eps = cfg.rare.eps_ladder[idx];
    SystemSpec spec_eps = cfg.system;
    spec_eps.rotation = rare_rotation(eps, cfg.system.rotation.x0);

    AssumptionsReportB b = check_assumptions_B(spec_eps);
    if (!b.b1.pass) {
      throw AssumptionError("rare-sweep: " + b.b1.id + " fails (" + b.b1.detail + ")");
    }
    if (!b.b3.pass) {
      res.warnings.push_back("epsilon " + eps_tag(eps) + ": skipped, " + b.b3.detail);
      continue;
    }

    EmpiricalMeasure3 m = rare_orbit_measure(cfg, spec_eps, static_cast<int>(idx));
    std::string tag = eps_tag(eps);
    save_histogram(m, cfg.out_dir + "/hist_eps_" + tag + ".bin");
    write_fiber_marginal_csv(m, cfg.out_dir + "/marginal_eps_" + tag + ".csv");
    res.outputs.push_back("hist_eps_" + tag + ".bin");
    res.outputs.push_back("marginal_eps_" + tag + ".csv");

    double mass = mass_outside_interval(m, spec_eps.fiber.z_a, cfg.rare.i_minus_radius);
    double tv = base_uniformity_tv(m);
    auto rng = stream_rng(cfg.seed, kStreamCentral + idx);
    double central = central_exponent(spec_eps, random_point3(rng), cfg.run.n, cfg.run.burn_in);

    if (tv >= 0.02) {
      append_violation(res, "epsilon " + tag + ": base TV " + num_s(tv) + " >= 0.02");
    }
    if (central >= 0.0) {
      append_violation(res, "epsilon " + tag + ": central exponent " + num_s(central) + " >= 0");
    }

    // Base-grid survivors: orbits started on the repelling fiber circle that
    // have not yet entered the interaction window.
    {
      int g = cfg.rare.survivor_grid;
      int steps = cfg.rare.survivor_steps;
      std::vector<long> alive(steps + 1, 0);
      for (int cy = 0; cy < g; ++cy) {
        for (int cx = 0; cx < g; ++cx) {
          Point3 p{(cx + 0.5) / g, (cy + 0.5) / g, spec_eps.fiber.z_r};
          int hit = steps + 1;
          for (int k = 1; k <= steps; ++k) {
            p = coupled_apply(spec_eps, p);
            double t = wrap_unit(p.x - spec_eps.rotation.x0);
            if (t > 0.0 && t < eps) {
              hit = k;
              break;
            }
          }
          for (int n = 1; n <= steps && n < hit; ++n) ++alive[n];
        }
      }
      double denom = static_cast<double>(g) * g;
      for (int n = 1; n <= steps; ++n) {
        surv.row({tag, int_s(n), num_s(alive[n] / denom)});
      }
    }

    double b3_margin = b.witness ? b.witness->margin : 0.0;
    sweep.row({tag, num_s(mass), num_s(tv), num_s(central), b.b3.pass ? "1" : "0",
               num_s(b3_margin)});
    sweep_json.push_back({{"epsilon", eps},
                          {"mass_outside", mass},
                          {"base_tv", tv},
                          {"central_exponent", central},
                          {"b3_margin", b3_margin}});
    ran_eps.push_back(eps);
    ran_mass.push_back(mass);
  }
  res.report["sweep"] = sweep_json;

  for (std::size_t i = 1; i < ran_mass.size(); ++i) {
    if (!(ran_mass[i] < ran_mass[i - 1]) && ran_eps[i] < ran_eps[i - 1]) {
      append_violation(res, "mass outside I- not decreasing from epsilon " +
                                eps_tag(ran_eps[i - 1]) + " to " + eps_tag(ran_eps[i]));
    }
  }

  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (std::size_t i = 0; i < ran_mass.size(); ++i) {
      if (ran_mass[i] <= 0.0) {
        res.warnings.push_back("epsilon " + eps_tag(ran_eps[i]) +
                               ": zero outside mass, excluded from the slope fit");
        continue;
      }
      double x = std::log(ran_eps[i]), y = std::log(ran_mass[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (n >= 2) {
      double slope = (static_cast<double>(n) * sxy - sx * sy) /
                     (static_cast<double>(n) * sxx - sx * sx);
      res.report["mass_slope"] = slope;
      if (slope < 0.6 || slope > 1.4) {
        append_violation(res, "log-log mass slope " + num_s(slope) + " outside [0.6, 1.4]");
      }
    } else {
      append_violation(res, "fewer than two epsilon values completed; no slope fit");
    }
  }

  write_json_file(cfg.out_dir + "/rare_report.json", res.report);
  res.outputs.push_back("rare_report.json");
  return res;
}

DriverResult run_curve_dump(const ExperimentConfig& cfg) {
  DriverResult res;
  ensure_dir(cfg.out_dir);
  UnstableCurve curve = grow_reference_curve(cfg);
  DensityProfile rho = rho_density(cfg.system, curve, cfg.curve.rho_depth, 1e-12,
                                   cfg.curve.rho_extra);
  {
    CsvFile csv(cfg.out_dir + "/curve.csv", "param,x,y,z,lifted_z,rho");
    for (std::size_t i = 0; i < curve.nodes.size(); ++i) {
      const auto& nd = curve.nodes[i];
      csv.row({num_s(nd.param), num_s(nd.p.x), num_s(nd.p.y), num_s(nd.p.z), num_s(nd.lifted_z),
               num_s(rho.rho[i])});
    }
    res.outputs.push_back("curve.csv");
  }
  res.report["curve"] = {{"nodes", curve.nodes.size()},
                         {"length", curve.length()},
                         {"span", curve.span()},
                         {"domains", fundamental_domains(curve).size()},
                         {"distortion_K_0.1", distortion_bound(curve, rho, 0.1)}};
  write_json_file(cfg.out_dir + "/curve_report.json", res.report);
  res.outputs.push_back("curve_report.json");
  return res;
}

}  // namespace skewlab
