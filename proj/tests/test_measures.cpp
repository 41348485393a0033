#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>

#include "skewlab/anosov.hpp"
#include "skewlab/birkhoff.hpp"
#include "skewlab/curve.hpp"
#include "skewlab/density.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/fiber.hpp"
#include "skewlab/histogram.hpp"
#include "skewlab/observables.hpp"
#include "skewlab/rng.hpp"
#include "skewlab/rotation.hpp"
#include "skewlab/system.hpp"

using namespace skewlab;

namespace {

SystemSpec flagship() {
  SystemSpec s;
  s.anosov = anosov_family(10);
  s.fiber = projective_fiber(0.4);
  s.rotation = linear_rotation();
  return s;
}

SystemSpec uncoupled_f0() {
  SystemSpec s;
  s.anosov = anosov_family(2);
  s.fiber = sine_fiber(0.5);
  s.rotation = no_rotation();
  return s;
}

SystemSpec weak_tame() {
  SystemSpec s;
  s.anosov = anosov_family(2);
  s.fiber = sine_fiber(0.8);
  s.rotation = no_rotation();
  s.delta = 1e-3;
  return s;
}

}  // namespace

TEST_CASE("histogram binning geometry") {
  EmpiricalMeasure3 m(4, 4, 8);
  REQUIRE(m.w.size() == 4 * 4 * 8);

  CHECK(m.bin_index({0.0, 0.0, 0.0}) == 0);
  // x runs fastest.
  CHECK(m.bin_index({0.3, 0.0, 0.0}) == 1);
  CHECK(m.bin_index({0.0, 0.3, 0.0}) == 4);
  CHECK(m.bin_index({0.0, 0.0, 0.2}) == 16);
  // Wrapped coordinates land in the top bins, never out of range.
  CHECK(m.bin_index({0.999999, 0.999999, 0.999999}) ==
        static_cast<std::size_t>(4 * 4 * 8 - 1));

  Point3 c = m.bin_center(m.bin_index({0.3, 0.55, 0.9}));
  CHECK(std::fabs(c.x - 0.375) < 1e-15);
  CHECK(std::fabs(c.y - 0.625) < 1e-15);
  CHECK(std::fabs(c.z - 7.5 / 8) < 1e-15);

  m.deposit({0.3, 0.55, 0.9});
  m.deposit({0.3, 0.55, 0.9});
  CHECK(m.total == 2.0);
  CHECK(m.w[m.bin_index({0.3, 0.55, 0.9})] == 2.0);
}

TEST_CASE("histogram merge is order-fixed and shape-checked") {
  EmpiricalMeasure3 a(4, 4, 4);
  EmpiricalMeasure3 b(4, 4, 4);
  a.deposit({0.1, 0.1, 0.1});
  b.deposit({0.9, 0.9, 0.9});
  b.deposit({0.1, 0.1, 0.1});
  merge(a, b);
  CHECK(a.total == 3.0);
  CHECK(a.w[a.bin_index({0.1, 0.1, 0.1})] == 2.0);
  CHECK(a.w[a.bin_index({0.9, 0.9, 0.9})] == 1.0);

  EmpiricalMeasure3 c(4, 4, 8);
  CHECK_THROWS_AS(merge(a, c), Error);
}

TEST_CASE("marginals are normalized and consistent") {
  EmpiricalMeasure3 m(8, 8, 16);
  auto gen = stream_rng(99, 1);
  for (int i = 0; i < 5000; ++i) m.deposit(random_point3(gen));

  auto fib = fiber_marginal(m);
  auto base = base_marginal(m);
  REQUIRE(fib.size() == 16);
  REQUIRE(base.size() == 64);
  double sf = 0.0, sb = 0.0;
  for (double v : fib) sf += v;
  for (double v : base) sb += v;
  CHECK(std::fabs(sf - 1.0) < 1e-12);
  CHECK(std::fabs(sb - 1.0) < 1e-12);

  // The z marginal of a uniform cloud is near-uniform.
  for (double v : fib) CHECK(std::fabs(v - 1.0 / 16) < 0.02);
}

TEST_CASE("mass outside an interval and base uniformity distance") {
  EmpiricalMeasure3 m(4, 4, 16);
  m.deposit({0.1, 0.1, 0.01});   // inside [z_a - 0.1, z_a + 0.1]
  m.deposit({0.2, 0.2, 0.97});   // inside, wrapped side
  m.deposit({0.3, 0.3, 0.5});    // outside
  m.deposit({0.4, 0.4, 0.25});   // outside
  CHECK(std::fabs(mass_outside_interval(m, 0.0, 0.1) - 0.5) < 1e-12);
  CHECK(std::fabs(mass_outside_interval(m, 0.0, 0.45) - 0.25) < 1e-12);

  EmpiricalMeasure3 u(4, 4, 4);
  for (int ix = 0; ix < 4; ++ix)
    for (int iy = 0; iy < 4; ++iy)
      u.deposit({(ix + 0.5) / 4, (iy + 0.5) / 4, 0.5});
  CHECK(base_uniformity_tv(u) < 1e-12);

  EmpiricalMeasure3 spike(4, 4, 4);
  spike.deposit({0.1, 0.1, 0.1});
  CHECK(std::fabs(base_uniformity_tv(spike) - (1.0 - 1.0 / 16)) < 1e-12);
}

TEST_CASE("histogram file round trip is bit exact") {
  EmpiricalMeasure3 m(8, 8, 8);
  auto gen = stream_rng(7, 2);
  for (int i = 0; i < 1000; ++i) m.deposit(random_point3(gen));
  m.burn_in = 123;
  m.source = "round-trip-test";

  std::string path = "measure_roundtrip_tmp.bin";
  save_histogram(m, path);
  EmpiricalMeasure3 back = load_histogram(path);
  std::remove(path.c_str());

  CHECK(back.nx == m.nx);
  CHECK(back.ny == m.ny);
  CHECK(back.nz == m.nz);
  CHECK(back.total == m.total);
  CHECK(back.burn_in == m.burn_in);
  CHECK(back.source == m.source);
  REQUIRE(back.w.size() == m.w.size());
  for (std::size_t i = 0; i < m.w.size(); ++i) CHECK(back.w[i] == m.w[i]);
}

TEST_CASE("orbit measure accounts for every post-burn-in step") {
  SystemSpec s = flagship();
  EmpiricalMeasure3 m = orbit_measure(s, {0.123, 0.456, 0.789}, 20000, 100, 16, 16, 16);
  CHECK(m.total == 20000.0);
  CHECK(m.burn_in == 100);

  EmpiricalMeasure3 again =
      orbit_measure(s, {0.123, 0.456, 0.789}, 20000, 100, 16, 16, 16);
  for (std::size_t i = 0; i < m.w.size(); ++i) CHECK(m.w[i] == again.w[i]);
}

TEST_CASE("birkhoff averages: exact cases and batching") {
  SystemSpec s = flagship();
  Observable one{"one", [](const Point3&) { return 1.0; }};
  BirkhoffStat b = birkhoff_average(s, {0.2, 0.3, 0.4}, one, 10000, 100);
  CHECK(b.mean == 1.0);
  CHECK(b.se == 0.0);
  CHECK(b.n == 10000);

  // The uncoupled fiber collapses onto z_a = 0, so cos(2 pi z) averages to 1.
  SystemSpec unc = uncoupled_f0();
  BirkhoffStat bz =
      birkhoff_average(unc, {0.3, 0.8, 0.2}, builtin_observable("cos_z"), 20000, 2000);
  CHECK(std::fabs(bz.mean - 1.0) < 1e-6);

  CHECK_THROWS_AS(birkhoff_average(s, {0.2, 0.3, 0.4}, one, 19, 0), Error);
}

TEST_CASE("birkhoff averages agree between starts under weak coupling") {
  SystemSpec s = weak_tame();
  Observable obs = builtin_observable("cos_z");
  auto g1 = stream_rng(12345, 100);
  auto g2 = stream_rng(12345, 101);
  BirkhoffStat b1 = birkhoff_average(s, random_point3(g1), obs, 200000, 2000);
  BirkhoffStat b2 = birkhoff_average(s, random_point3(g2), obs, 200000, 2000);
  double gap = std::fabs(b1.mean - b2.mean);
  double tol = 3.0 * std::sqrt(b1.se * b1.se + b2.se * b2.se) + 1e-4;
  CHECK(gap < tol);
}

TEST_CASE("cesaro pushforward matches its own histogram") {
  SystemSpec s = flagship();
  UnstableCurve c = seed_unstable_segment(s, {0.44, 0.17, 0.58}, 2.0);
  DensityProfile rho = rho_density(s, c);
  std::vector<Observable> obs = {builtin_observable("cos_x"),
                                 builtin_observable("cos_z")};
  CesaroResult res = cesaro_pushforward(s, c, rho, 400, 100, 16, 16, 16, obs);
  REQUIRE(res.means_at_points.size() == obs.size());
  REQUIRE(res.means_at_centers.size() == obs.size());

  // Recompute the center-valued means straight from the histogram.
  for (std::size_t k = 0; k < obs.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < res.measure.w.size(); ++i) {
      if (res.measure.w[i] == 0.0) continue;
      acc += res.measure.w[i] * obs[k].fn(res.measure.bin_center(i));
    }
    acc /= res.measure.total;
    CHECK(std::fabs(acc - res.means_at_centers[k]) < 1e-9);
  }

  // The uncoupled F0 fiber contracts to z_a, so late iterates pile up there.
  SystemSpec unc = uncoupled_f0();
  UnstableCurve cu = seed_unstable_segment(unc, {0.3, 0.6, 0.25}, 2.0);
  DensityProfile ru = rho_density(unc, cu);
  CesaroResult sink = cesaro_pushforward(unc, cu, ru, 400, 200, 8, 8, 16, obs);
  auto fib = fiber_marginal(sink.measure);
  CHECK(fib[0] + fib[15] > 0.9);
}

TEST_CASE("builtin observables") {
  auto names = builtin_observable_names();
  CHECK(names.size() >= 4);
  for (std::string n : names) {
    // The listing shows the parametrized form as a syntax template.
    if (auto pos = n.find(":R"); pos != std::string::npos) n.replace(pos, 2, ":0.25");
    CHECK_NOTHROW(builtin_observable(n));
  }
  CHECK_THROWS_AS(builtin_observable("nope"), ConfigError);

  Observable ind = builtin_observable("indicator_iminus:0.1");
  CHECK(ind.fn({0.5, 0.5, 0.05}) == 1.0);
  CHECK(ind.fn({0.5, 0.5, 0.95}) == 1.0);
  CHECK(ind.fn({0.5, 0.5, 0.5}) == 0.0);
  CHECK(ind.fn({0.5, 0.5, 0.11}) == 0.0);
  CHECK_THROWS_AS(builtin_observable("indicator_iminus:0.6"), ConfigError);
  CHECK_THROWS_AS(builtin_observable("indicator_iminus:abc"), ConfigError);

  Observable cx = builtin_observable("cos_x");
  CHECK(std::fabs(cx.fn({0.25, 0.9, 0.9}) - std::cos(2 * 3.14159265358979323846 * 0.25)) <
        1e-15);
  Observable sxy = builtin_observable("sin_xy");
  CHECK(std::fabs(sxy.fn({0.1, 0.2, 0.9}) -
                  std::sin(2 * 3.14159265358979323846 * 0.3)) < 1e-12);
}
