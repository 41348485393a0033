#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "skewlab/anosov.hpp"
#include "skewlab/assumptions.hpp"
#include "skewlab/circle_diag.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/fiber.hpp"
#include "skewlab/rng.hpp"
#include "skewlab/rotation.hpp"
#include "skewlab/system.hpp"
#include "skewlab/torus.hpp"

using namespace skewlab;

namespace {

SystemSpec flagship() {
  SystemSpec s;
  s.anosov = anosov_family(10);
  s.fiber = projective_fiber(0.4);
  s.rotation = linear_rotation();
  return s;
}

SystemSpec rare_reference() {
  SystemSpec s;
  s.anosov = anosov_family(2);
  s.fiber = projective_fiber(0.25);
  s.rotation = rare_rotation(0.1, 0.3);
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

TEST_CASE("wrapping and lift deltas") {
  CHECK(wrap_unit(1.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(wrap_unit(-0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(wrap_unit(1.0) == 0.0);
  CHECK(wrap_unit(-0.0) == 0.0);
  CHECK(lift_delta(0.1, 0.9) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(lift_delta(0.9, 0.1) == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(lift_delta(0.6, 0.1) == 0.5);  // half displacement resolves to +1/2

  auto rng = stream_rng(1, 2);
  for (int i = 0; i < 1000; ++i) {
    double a = uniform01(rng), b = uniform01(rng);
    double d = lift_delta(a, b);
    CHECK(d > -0.5);
    CHECK(d <= 0.5);
    CHECK(wrap_unit(b + d) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("anosov family and eigendata") {
  AnosovSpec a2 = anosov_family(2);
  CHECK(a2.m11 == 2);
  CHECK(a2.m12 == 1);
  CHECK(a2.m21 == 1);
  CHECK(a2.m22 == 1);

  EigenData e2 = eigendata(a2);
  CHECK(std::fabs(e2.alpha_u - 2.618033988749895) < 1e-14);
  CHECK(std::fabs(e2.alpha_u * e2.alpha_s - 1.0) < 1e-14);
  CHECK(std::fabs(e2.beta - 0.8506508083520399) < 1e-14);

  EigenData e10 = eigendata(anosov_family(10));
  CHECK(std::fabs(e10.alpha_u - 10.908326913195984) < 1e-13);
  CHECK(std::fabs(e10.alpha_s - 0.09167308680401606) < 1e-15);
  CHECK(std::fabs(e10.beta - 0.994945630594192) < 1e-14);
  CHECK(e10.du.x > 0.0);
  CHECK(e10.ds.x < 0.0);
  CHECK(std::fabs(norm(e10.du) - 1.0) < 1e-14);
  CHECK(std::fabs(norm(e10.ds) - 1.0) < 1e-14);

  CHECK(std::fabs(spectral_norm(anosov_family(10)) - 13.527547277904578) < 1e-12);
  // The cat map is symmetric, so the norm equals the top eigenvalue.
  CHECK(std::fabs(spectral_norm(a2) - e2.alpha_u) < 1e-14);

  CHECK_THROWS_AS(eigendata(AnosovSpec{1, 0, 0, 1}), AssumptionError);
  CHECK_THROWS_AS(eigendata(AnosovSpec{2, 1, 1, 2}), AssumptionError);  // det 3
}

TEST_CASE("anosov apply and inverse are integer-exact") {
  AnosovSpec a = anosov_family(10);
  auto rng = stream_rng(3, 4);
  for (int i = 0; i < 10000; ++i) {
    Point2 p{uniform01(rng), uniform01(rng)};
    Point2 q = anosov_apply(a, p);
    Point2 back = anosov_inverse_apply(a, q);
    CHECK(torus_dist2(back, p) < 1e-12);
  }
}

TEST_CASE("fiber families: values, fixed points, lifts, inverses") {
  FiberSpec sine = sine_fiber(0.5);
  CHECK(std::fabs(fiber_eval(sine, 0.25) - 0.17042252845405233) < 1e-15);
  CHECK(fiber_eval(sine, 0.0) == 0.0);
  CHECK(std::fabs(fiber_eval(sine, 0.5) - 0.5) < 1e-15);
  CHECK(std::fabs(fiber_deriv(sine, 0.0) - 0.5) < 1e-15);
  CHECK(std::fabs(fiber_deriv(sine, 0.5) - 1.5) < 1e-15);
  CHECK(sine.lam_min == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sine.lam_max == doctest::Approx(1.5).epsilon(1e-15));

  FiberSpec proj = projective_fiber(0.4);
  CHECK(std::fabs(fiber_deriv(proj, 0.0) - 0.4) < 1e-14);
  CHECK(std::fabs(fiber_deriv(proj, 0.5) - 2.5) < 1e-14);
  CHECK(proj.lam_min == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(proj.lam_max == doctest::Approx(2.5).epsilon(1e-14));

  for (FiberSpec f : {sine, proj}) {
    CHECK(fiber_lift(f, 0.0) == 0.0);
    CHECK(std::fabs(fiber_lift(f, 1.0) - 1.0) < 1e-14);
    auto rng = stream_rng(5, 6);
    for (int i = 0; i < 10000; ++i) {
      double z = uniform01(rng);
      CHECK(std::fabs(fiber_lift(f, z + 1.0) - fiber_lift(f, z) - 1.0) < 1e-13);
      double w = fiber_inverse(f, z);
      CHECK(std::fabs(lift_delta(fiber_eval(f, w), z)) < 1e-12);
      double back = fiber_inverse(f, fiber_eval(f, z));
      CHECK(std::fabs(lift_delta(back, z)) < 1e-12);
    }
  }
}

TEST_CASE("lifted g is strictly increasing") {
  for (FiberSpec f : {sine_fiber(0.8), projective_fiber(0.25)}) {
    double prev = fiber_lift(f, 0.0);
    for (int i = 1; i <= 10000; ++i) {
      double cur = fiber_lift(f, i / 10000.0);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("rotation variants") {
  RotationSpec lin = linear_rotation();
  CHECK(rotation_eval(lin, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(rotation_deriv(lin, 0.77) == 1.0);
  CHECK(rotation_c_lo(lin) == 1.0);
  CHECK(rotation_c_hi(lin) == 1.0);

  RotationSpec sm = smooth_rotation(0.5);
  CHECK(std::fabs(rotation_c_lo(sm) - 0.5) < 1e-14);
  CHECK(std::fabs(rotation_c_hi(sm) - 1.5) < 1e-14);

  RotationSpec rare = rare_rotation(0.2, 0.3);
  CHECK(wrap_unit(rotation_eval(rare, 0.29)) == 0.0);
  CHECK(wrap_unit(rotation_eval(rare, 0.51)) == 0.0);
  CHECK(rotation_eval(rare, 0.4) > 0.0);
  CHECK(std::fabs(rotation_c_hi(rare) - 1.875 / 0.2) < 1e-12);

  // Monotone lifts: the derivative never goes negative; the coupled variants
  // are strictly increasing.
  for (int i = 0; i < 10000; ++i) {
    double x = i / 10000.0;
    CHECK(rotation_deriv(lin, x) > 0.0);
    CHECK(rotation_deriv(sm, x) > 0.0);
    CHECK(rotation_deriv(rare, x) >= 0.0);
  }
}

TEST_CASE("coupled apply: fixed point and round trip") {
  SystemSpec f0 = uncoupled_f0();
  Point3 rep{0.0, 0.0, 0.5};
  Point3 img = coupled_apply(f0, rep);
  CHECK(img.x == 0.0);
  CHECK(img.y == 0.0);
  CHECK(std::fabs(img.z - 0.5) < 1e-15);

  for (SystemSpec s : {flagship(), rare_reference(), uncoupled_f0()}) {
    auto rng = stream_rng(7, 8);
    for (int i = 0; i < 10000; ++i) {
      Point3 p = random_point3(rng);
      Point3 back = coupled_inverse(s, coupled_apply(s, p));
      CHECK(torus_dist(back, p) < 1e-10);
    }
  }

  SystemSpec pert = uncoupled_f0();
  pert.delta = 0.01;
  CHECK_THROWS_AS(coupled_inverse(pert, Point3{0.1, 0.2, 0.3}), Error);
}

TEST_CASE("decompose stages reproduce the composite map exactly") {
  SystemSpec s = flagship();
  auto rng = stream_rng(9, 10);
  for (int i = 0; i < 1000; ++i) {
    Point3 p = random_point3(rng);
    auto stages = decompose_apply(s, p);
    Point3 q = coupled_apply(s, p);
    CHECK(stages[2].x == q.x);
    CHECK(stages[2].y == q.y);
    CHECK(stages[2].z == q.z);
    // f1 only shears the fiber, f2 only applies g.
    CHECK(stages[0].x == p.x);
    CHECK(stages[0].y == p.y);
    CHECK(stages[1].x == p.x);
    CHECK(std::fabs(lift_delta(stages[1].z, fiber_eval(s.fiber, stages[0].z))) < 1e-15);
  }
}

namespace {

void check_jacobian_fd(const SystemSpec& s, int n_points, std::uint64_t stream) {
  const double h = 1e-6;
  auto rng = stream_rng(11, stream);
  for (int i = 0; i < n_points; ++i) {
    Point3 p = random_point3(rng);
    Jacobian3 j = coupled_jacobian(s, p);
    double coords[3] = {p.x, p.y, p.z};
    for (int c = 0; c < 3; ++c) {
      double save = coords[c];
      coords[c] = save + h;
      Point3 hi = coupled_apply(s, {coords[0], coords[1], coords[2]});
      coords[c] = save - h;
      Point3 lo = coupled_apply(s, {coords[0], coords[1], coords[2]});
      coords[c] = save;
      Vec3 fd = lift_delta(hi, lo);
      double col[3] = {fd.x / (2 * h), fd.y / (2 * h), fd.z / (2 * h)};
      for (int r = 0; r < 3; ++r) {
        double ref = j.m[r][c];
        CHECK(std::fabs(col[r] - ref) / std::max(1.0, std::fabs(ref)) < 1e-6);
      }
    }
  }
}

}  // namespace

TEST_CASE("jacobian matches finite differences") {
  check_jacobian_fd(flagship(), 1000, 12);
  check_jacobian_fd(rare_reference(), 1000, 13);
  SystemSpec pert = uncoupled_f0();
  pert.fiber = sine_fiber(0.4);
  pert.delta = 0.05;
  check_jacobian_fd(pert, 1000, 14);
}

TEST_CASE("skew structure: fiber column vanishes for delta = 0") {
  SystemSpec s = flagship();
  auto rng = stream_rng(15, 16);
  for (int i = 0; i < 1000; ++i) {
    Jacobian3 j = coupled_jacobian(s, random_point3(rng));
    CHECK(j.m[0][2] == 0.0);
    CHECK(j.m[1][2] == 0.0);
    CHECK(std::fabs(det(j) - j.m[2][2]) < 1e-14);  // unimodular base block
  }
}

TEST_CASE("jacobian determinant floor and validation") {
  double d0 = min_jacobian_det(flagship());
  CHECK(d0 > 0.39);
  CHECK(d0 < 0.45);

  SystemSpec pert;
  pert.anosov = anosov_family(2);
  pert.fiber = sine_fiber(0.4);
  pert.rotation = no_rotation();
  pert.delta = 0.05;
  // Exact floor 1 - sqrt(kappa^2 + (4 pi^2 delta^2)^2) = 0.588; the probe
  // grid sits slightly above it.
  double dp = min_jacobian_det(pert);
  CHECK(dp > 0.55);
  CHECK(dp < 0.62);
  CHECK_NOTHROW(validate(pert));

  pert.delta = 0.2;
  CHECK_THROWS_AS(validate(pert), ConfigError);
  pert.delta = -0.1;
  CHECK_THROWS_AS(validate(pert), ConfigError);
}

TEST_CASE("assumption report A") {
  AssumptionsReportA a = check_assumptions_A(flagship());
  CHECK(a.all_pass());
  CHECK(a.a1.pass);
  CHECK(a.a2.pass);
  CHECK(a.a3.pass);
  CHECK(std::fabs(a.alpha_s - 0.09167308680401606) < 1e-15);
  CHECK(std::fabs(a.lam_min - 0.4) < 1e-14);
  CHECK(std::fabs(a.lam_max - 2.5) < 1e-14);
  CHECK(a.c_lo == 1.0);
  CHECK(a.c_hi == 1.0);
  CHECK(std::fabs(a.beta - 0.994945630594192) < 1e-14);

  SystemSpec shallow;
  shallow.anosov = anosov_family(2);
  shallow.fiber = projective_fiber(0.35);  // below alpha_s = 0.382
  shallow.rotation = linear_rotation();
  AssumptionsReportA bad = check_assumptions_A(shallow);
  CHECK_FALSE(bad.a1.pass);
  CHECK_FALSE(bad.a1.detail.empty());

  AssumptionsReportA unc = check_assumptions_A(uncoupled_f0());
  CHECK_FALSE(unc.a2.pass);
}

TEST_CASE("assumption report B") {
  AssumptionsReportB b = check_assumptions_B(rare_reference());
  CHECK(b.b1.pass);  // 4 > 2.618
  CHECK(b.b2.pass);
  CHECK(b.b3.pass);
  REQUIRE(b.witness.has_value());
  const B3Witness& w = *b.witness;
  CHECK(w.margin > 0.0);
  CHECK(w.cap_c0 > 1.0);
  CHECK(w.disjoint_gap > 0.0);
  CHECK(w.steep_margin > 0.0);
  CHECK(w.d > w.d_lo);
  CHECK(w.d < w.d_hi);
  CHECK(w.i_plus_radius > 0.0);
  CHECK(w.i_minus_radius > 0.0);
  CHECK_FALSE(b.candidates.empty());

  SystemSpec sine_lin;
  sine_lin.anosov = anosov_family(2);
  sine_lin.fiber = sine_fiber(0.5);
  sine_lin.rotation = linear_rotation();
  AssumptionsReportB weak_fiber = check_assumptions_B(sine_lin);
  CHECK_FALSE(weak_fiber.b1.pass);  // 1.5 < 2.618

  AssumptionsReportB flag_b = check_assumptions_B(flagship());
  CHECK_FALSE(flag_b.b1.pass);  // 2.5 < 13.53
}

TEST_CASE("fixed fiber map diagnostics") {
  // r(0) = 0 for the linear profile, so the invariant-circle return map is g.
  CircleMap g = fixed_fiber_map(flagship());
  // The orbit drifts down onto z_a, so the estimate lands just below 0 and
  // wraps; compare on the circle.
  CHECK(std::fabs(lift_delta(rotation_number(g, 0.3, 10000), 0.0)) < 1e-3);
  OrbitCount oc = count_attracting_orbits(g);
  CHECK(oc.count == 1);
  CHECK(oc.period == 1);
  CHECK(oc.exact);

  CircleMap rot3{[](double z) { return wrap_unit(z + 0.3); }, [](double) { return 1.0; }};
  CHECK(std::fabs(rotation_number(rot3, 0.1, 1000) - 0.3) < 1e-12);

  CircleMap shifted = shifted_fiber_map(projective_fiber(0.4), 0.5);
  double rho4 = rotation_number(shifted, 0.2, 10000);
  double rho5 = rotation_number(shifted, 0.2, 100000);
  CHECK(rho4 >= 0.0);
  CHECK(rho4 < 1.0);
  CHECK(std::fabs(rho4 - rho5) < 1e-3);
}
