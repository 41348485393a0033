#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "skewlab/anosov.hpp"
#include "skewlab/cone.hpp"
#include "skewlab/curve.hpp"
#include "skewlab/density.hpp"
#include "skewlab/domains.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/fiber.hpp"
#include "skewlab/observables.hpp"
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

}  // namespace

TEST_CASE("seeded segment of the uncoupled product is a horizontal line") {
  SystemSpec s = uncoupled_f0();
  UnstableCurve c = seed_unstable_segment(s, {0.2, 0.6, 0.0}, 0.5);
  REQUIRE(c.nodes.size() >= 2);
  CHECK(std::fabs(c.length() - 0.5) < 1e-6);
  CHECK(std::fabs(c.span()) < 1e-12);
  EigenData eig = eigendata(s.anosov);
  for (std::size_t i = 1; i < c.nodes.size(); ++i) {
    Vec3 d = lift_delta(c.nodes[i].p, c.nodes[i - 1].p);
    CHECK(std::fabs(d.z) < 1e-12);
    double step = std::hypot(d.x, d.y);
    CHECK(step <= c.h_max * (1 + 1e-9));
    CHECK(std::fabs(d.x / step - eig.du.x) < 1e-9);
  }
}

TEST_CASE("seeded segment stays inside the cone and winds monotonically") {
  SystemSpec s = flagship();
  UnstableCurve c = seed_unstable_segment(s, {0.37, 0.18, 0.71}, 2.0);
  ConeParams cp = cone_params(s);
  EigenData eig = eigendata(s.anosov);
  for (std::size_t i = 1; i < c.nodes.size(); ++i) {
    CHECK(c.nodes[i].lifted_z > c.nodes[i - 1].lifted_z);
    CHECK(c.nodes[i].param > c.nodes[i - 1].param);
    Vec3 d = lift_delta(c.nodes[i].p, c.nodes[i - 1].p);
    double du_comp = d.x * eig.du.x + d.y * eig.du.y;
    double slope = d.z / du_comp;
    CHECK(slope >= cp.b * 0.95);
    CHECK(slope <= cp.a * 1.05);
  }
}

TEST_CASE("curve_from_points rebuilds lift and arclength") {
  std::vector<Point3> pts;
  for (int i = 0; i <= 100; ++i) {
    double t = i * 1e-3;
    pts.push_back(wrap(Point3{0.9 + t, 0.5, 0.99 + 0.5 * t}));
  }
  UnstableCurve c = curve_from_points(pts, 2e-3);
  REQUIRE(c.nodes.size() == 101);
  CHECK(c.nodes.front().param == 0.0);
  CHECK(std::fabs(c.nodes.back().lifted_z - (0.99 + 0.5 * 0.1)) < 1e-12);
  CHECK(std::fabs(c.span() - 0.05) < 1e-12);
  for (std::size_t i = 1; i < c.nodes.size(); ++i) {
    CHECK(c.nodes[i].param > c.nodes[i - 1].param);
    CHECK(std::fabs(c.nodes[i].lifted_z - c.nodes[i - 1].lifted_z) < 0.5);
  }
}

TEST_CASE("evolution multiplies the base projection by alpha_u") {
  SystemSpec s = flagship();
  UnstableCurve c = seed_unstable_segment(s, {0.61, 0.33, 0.12}, 1.0);
  double len0 = base_projection_length(c);
  UnstableCurve c1 = evolve_and_refine(s, c, 1);
  double len1 = base_projection_length(c1);
  double alpha = eigendata(s.anosov).alpha_u;
  CHECK(len1 / len0 > alpha * 0.99);
  CHECK(len1 / len0 < alpha * 1.01);
  CHECK(c1.span() > c.span());
  for (std::size_t i = 1; i < c1.nodes.size(); ++i) {
    double step = c1.nodes[i].param - c1.nodes[i - 1].param;
    CHECK(step <= c1.h_max * (1 + 1e-9));
    CHECK(c1.nodes[i].lifted_z > c1.nodes[i - 1].lifted_z);
  }

  CHECK_THROWS_AS(evolve_and_refine(s, c, 1, 10), NodeCapExceeded);
}

TEST_CASE("fundamental domains partition the winding") {
  SystemSpec s = flagship();
  UnstableCurve c = seed_unstable_segment(s, {0.25, 0.8, 0.4}, 4.0);
  UnstableCurve grown = evolve_and_refine(s, c, 1);
  REQUIRE(grown.span() >= 2.0);

  auto domains = fundamental_domains(grown);
  long expect = static_cast<long>(std::floor(grown.span()));
  CHECK(domains.size() >= static_cast<std::size_t>(expect - 1));
  CHECK(domains.size() <= static_cast<std::size_t>(expect));
  for (std::size_t k = 0; k < domains.size(); ++k) {
    const auto& d = domains[k];
    CHECK(d.first < d.last);
    double range = grown.nodes[d.last].lifted_z - grown.nodes[d.first].lifted_z;
    CHECK(std::fabs(range - 1.0) < 1e-2);
    // Anchored at z = z_a crossings.
    CHECK(std::fabs(lift_delta(grown.nodes[d.first].p.z, 0.0)) < 1e-2);
    CHECK(std::fabs(lift_delta(grown.nodes[d.last].p.z, 0.0)) < 1e-2);
    if (k > 0) CHECK(d.first >= domains[k - 1].last);
  }

  UnstableCurve shorty = seed_unstable_segment(s, {0.25, 0.8, 0.4}, 0.5);
  CHECK(fundamental_domains(shorty).empty());
}

TEST_CASE("reference density is flat for the uncoupled linear case") {
  SystemSpec s = uncoupled_f0();
  UnstableCurve c = seed_unstable_segment(s, {0.41, 0.77, 0.3}, 2.0);
  DensityProfile rho = rho_density(s, c);
  double L = c.length();
  for (double v : rho.rho) CHECK(std::fabs(v * L - 1.0) < 1e-10);
  CHECK(std::fabs(distortion_bound(c, rho, 0.5) - 1.0) < 1e-10);
}

TEST_CASE("reference density: normalization, truncation, distortion") {
  SystemSpec s = flagship();
  UnstableCurve c = seed_unstable_segment(s, {0.15, 0.52, 0.63}, 2.0);
  DensityProfile rho40 = rho_density(s, c, 40);
  REQUIRE(rho40.rho.size() == c.nodes.size());

  double integral = 0.0;
  for (std::size_t i = 1; i < c.nodes.size(); ++i) {
    double h = c.nodes[i].param - c.nodes[i - 1].param;
    integral += 0.5 * h * (rho40.rho[i] + rho40.rho[i - 1]);
  }
  CHECK(std::fabs(integral - 1.0) < 1e-12);
  for (double v : rho40.rho) CHECK(v > 0.0);

  DensityProfile rho60 = rho_density(s, c, 60);
  for (std::size_t i = 0; i < rho40.rho.size(); ++i) {
    CHECK(std::fabs(rho40.rho[i] - rho60.rho[i]) < 1e-9);
  }

  double k_small = distortion_bound(c, rho40, 0.1);
  double k_large = distortion_bound(c, rho40, 1.0);
  CHECK(k_small >= 1.0);
  CHECK(k_large >= k_small);
  CHECK(std::isfinite(k_large));
}

TEST_CASE("pushforward of the curve measure matches the measure of the image") {
  SystemSpec s = flagship();
  UnstableCurve c = seed_unstable_segment(s, {0.82, 0.29, 0.47}, 2.0, 2.5e-4);
  DensityProfile rho = rho_density(s, c);
  UnstableCurve c1 = evolve_and_refine(s, c, 1);
  DensityProfile rho1 = rho_density(s, c1);

  for (const char* name : {"cos_z", "cos_x", "sin_xy"}) {
    Observable obs = builtin_observable(name);
    double lhs = curve_integral(c1, rho1, obs.fn);
    double rhs = curve_integral(
        c, rho, [&](const Point3& p) { return obs.fn(coupled_apply(s, p)); });
    CHECK(std::fabs(lhs - rhs) < 1e-6);
  }
}

TEST_CASE("uniform-s test mode reproduces the circle integral of log g'") {
  SystemSpec sine6;
  sine6.anosov = anosov_family(10);
  sine6.fiber = sine_fiber(0.6);
  sine6.rotation = linear_rotation();
  UnstableCurve c = seed_unstable_segment(sine6, {0.3, 0.9, 0.2}, 4.0);
  UnstableCurve grown = evolve_and_refine(sine6, c, 1);
  auto domains = fundamental_domains(grown);
  REQUIRE_FALSE(domains.empty());
  double val = cc_integral_uniform_s(sine6, grown, domains.front());
  CHECK(std::fabs(val - (-0.10536051565782630)) < 1e-5);

  SystemSpec proj25;
  proj25.anosov = anosov_family(10);
  proj25.fiber = projective_fiber(0.25);
  proj25.rotation = linear_rotation();
  UnstableCurve c2 = seed_unstable_segment(proj25, {0.3, 0.9, 0.2}, 4.0);
  UnstableCurve grown2 = evolve_and_refine(proj25, c2, 1);
  auto domains2 = fundamental_domains(grown2);
  REQUIRE_FALSE(domains2.empty());
  double val2 = cc_integral_uniform_s(proj25, grown2, domains2.front());
  CHECK(std::fabs(val2 - (-0.44628710262841951)) < 1e-4);
}

TEST_CASE("cc integral is negative and stable under refinement") {
  SystemSpec s = flagship();
  // Half the nodes of the same polyline, so the comparison isolates the
  // quadrature: independently seeded curves differ at O(h^2) in position,
  // which would swamp the tolerance.
  UnstableCurve fine = seed_unstable_segment(s, {0.55, 0.1, 0.5}, 12.0, 1.25e-4);
  REQUIRE(fine.span() > 1.0);
  std::vector<Point3> half;
  for (std::size_t i = 0; i < fine.nodes.size(); i += 2) half.push_back(fine.nodes[i].p);
  UnstableCurve coarse = curve_from_points(half, 2.5e-4);

  auto fine_doms = fundamental_domains(fine);
  auto coarse_doms = fundamental_domains(coarse);
  REQUIRE_FALSE(fine_doms.empty());
  REQUIRE_FALSE(coarse_doms.empty());
  double v_fine = cc_integral(s, fine, fine_doms.front());
  double v_coarse = cc_integral(s, coarse, coarse_doms.front());
  CHECK(v_fine < 0.0);
  CHECK(v_coarse < 0.0);
  CHECK(std::fabs(v_fine - v_coarse) < 1e-8);
}

TEST_CASE("cc sufficient condition on reference fibers") {
  CCSufficient ref = cc_sufficient_lhs(flagship());
  CHECK(std::fabs(ref.int_plus - 0.19350508507944490) < 1e-12);
  CHECK(std::fabs(ref.int_minus - (-0.39644592907613521)) < 1e-12);
  CHECK(std::fabs(ref.bracket - 1.6027495086237801) < 1e-12);
  CHECK(std::fabs(ref.value - (-0.08630574904885213)) < 1e-12);
  CHECK(std::fabs(ref.i_plus_lo - 0.32049148201431195) < 1e-12);
  CHECK(std::fabs((ref.i_plus_lo + ref.i_plus_hi) - 1.0) < 1e-12);
  CHECK(std::fabs(ref.int_plus + ref.int_minus - (-0.20294084399669031)) < 1e-12);
  CHECK(ref.k_a == 1.0);

  // The condition is sufficient, not necessary: a tamer fiber can leave it
  // inconclusive while the domain integrals still come out negative.
  SystemSpec border;
  border.anosov = anosov_family(2);
  border.fiber = projective_fiber(0.5);
  border.rotation = linear_rotation();
  CCSufficient b = cc_sufficient_lhs(border);
  CHECK(std::isfinite(b.value));
  CHECK(b.int_plus > 0.0);
  CHECK(b.int_minus < 0.0);

  SystemSpec unc = uncoupled_f0();
  CHECK_THROWS_AS(cc_sufficient_lhs(unc), AssumptionError);
}
