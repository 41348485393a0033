#include "skewlab/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "skewlab/errors.hpp"
#include "skewlab/torus.hpp"

namespace skewlab {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double winding_number(const RotationSpec& rot, int n_grid) {
  double sum = 0.0;
  double prev = rotation_eval(rot, 0.0);
  for (int i = 1; i <= n_grid; ++i) {
    double cur = rotation_eval(rot, wrap_unit(i / static_cast<double>(n_grid)));
    sum += lift_delta(cur, prev);
    prev = cur;
  }
  return sum;
}

double min_fiber_deriv_on(const FiberSpec& fib, double lo, double hi, int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    double z = wrap_unit(lo + (hi - lo) * i / n);
    best = std::min(best, fiber_deriv(fib, z));
  }
  return best;
}

double max_fiber_deriv_on(const FiberSpec& fib, double lo, double hi, int n) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    double z = wrap_unit(lo + (hi - lo) * i / n);
    worst = std::max(worst, fiber_deriv(fib, z));
  }
  return worst;
}

// min over the climb region {r in [d, 1-d]} of 2 eps beta r' - 1. The
// steepness clause asks the unstable-direction derivative of r (that is
// beta r' for a linear base) to exceed 1/(2 eps) wherever r is at least d
// away from 0. Increasing in d, so the feasibility threshold bisects cleanly.
double steep_margin(const RotationSpec& rot, double beta, double d, int n) {
  double eps = rot.eps;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    double t = i / static_cast<double>(n);
    double x = wrap_unit(rot.x0 + t * eps);
    double rv = rotation_eval(rot, x);
    if (rv < d || rv > 1.0 - d) continue;
    worst = std::min(worst, 2.0 * eps * beta * rotation_deriv(rot, x) - 1.0);
  }
  return worst;  // +inf when the region is empty
}

}  // namespace

AssumptionsReportA check_assumptions_A(const SystemSpec& s) {
  AssumptionsReportA rep;
  EigenData eig;
  try {
    eig = eigendata(s.anosov);
  } catch (const AssumptionError& e) {
    // Degenerate base matrix: every geometric clause fails, reported rather
    // than thrown.
    rep.a1 = {"A1", false, e.what()};
    rep.a2 = {"A2", false, "not evaluated (base matrix rejected)"};
    rep.a3 = {"A3", false, e.what()};
    return rep;
  }
  rep.alpha_u = eig.alpha_u;
  rep.alpha_s = eig.alpha_s;
  rep.beta = eig.beta;
  rep.lam_min = s.fiber.lam_min;
  rep.lam_max = s.fiber.lam_max;
  rep.c_lo = rotation_c_lo(s.rotation);
  rep.c_hi = rotation_c_hi(s.rotation);

  rep.a1.id = "A1";
  rep.a1.pass = rep.alpha_s < rep.lam_min && rep.lam_min < 1.0 && 1.0 < rep.lam_max &&
                rep.lam_max < rep.alpha_u;
  rep.a1.detail = num(rep.alpha_s) + " < " + num(rep.lam_min) + " < 1 < " +
                  num(rep.lam_max) + " < " + num(rep.alpha_u);

  rep.a2.id = "A2";
  switch (s.rotation.variant) {
    case RotationVariant::Linear:
    case RotationVariant::Smooth:
      rep.a2.pass = rep.c_lo > 0.0;
      rep.a2.detail = num(rep.c_lo) + " <= r' <= " + num(rep.c_hi);
      break;
    case RotationVariant::Rare:
      rep.a2.pass = false;
      rep.a2.detail = "r' vanishes off the support window (c = 0)";
      break;
    case RotationVariant::None:
      rep.a2.pass = false;
      rep.a2.detail = "r is identically zero (degree zero, c = 0)";
      break;
  }

  rep.a3.id = "A3";
  rep.a3.pass = rep.beta > 0.0;
  rep.a3.detail = "beta = " + num(rep.beta) +
                  "; alpha^u constant = " + num(rep.alpha_u) + " (linear base)";
  return rep;
}

AssumptionsReportB check_assumptions_B(const SystemSpec& s) {
  AssumptionsReportB rep;
  EigenData eig;
  try {
    eig = eigendata(s.anosov);
  } catch (const AssumptionError& e) {
    rep.b1 = {"B1", false, e.what()};
    rep.b2 = {"B2", false, "not evaluated (base matrix rejected)"};
    rep.b3 = {"B3", false, "not evaluated (base matrix rejected)"};
    return rep;
  }
  rep.lam_max = s.fiber.lam_max;
  rep.base_norm = spectral_norm(s.anosov);

  rep.b1.id = "B1";
  rep.b1.pass = rep.lam_max > rep.base_norm;
  rep.b1.detail = "lam_g_max " + num(rep.lam_max) + (rep.b1.pass ? " > " : " <= ") +
                  "max ||DA|| " + num(rep.base_norm);

  rep.b2.id = "B2";
  double winding = winding_number(s.rotation, 20000);
  if (s.rotation.variant != RotationVariant::Rare) {
    rep.b2.pass = false;
    rep.b2.detail = s.rotation.variant == RotationVariant::None
                        ? "r is identically zero"
                        : "r is supported on the whole circle, not a width-eps window";
  } else {
    double eps = s.rotation.eps;
    double outside = 0.0;
    for (int i = 0; i < 20000; ++i) {
      double x = i / 20000.0;
      double u = wrap_unit(x - s.rotation.x0);
      if (u > eps) outside = std::max(outside, std::abs(rotation_eval(s.rotation, x)));
    }
    rep.b2.pass = std::abs(winding - 1.0) < 1e-9 && outside < 1e-14;
    rep.b2.detail = "support width " + num(eps) + " at x0 = " + num(s.rotation.x0) +
                    ", winding " + num(winding) + ", max |r| off support " + num(outside);
  }

  rep.b3.id = "B3";
  if (s.rotation.variant != RotationVariant::Rare) {
    rep.b3.pass = false;
    rep.b3.detail = "steepness clause needs a rare rotation profile";
    return rep;
  }

  // d_lo: smallest separation parameter whose steepness clause holds. The
  // margin is increasing in d, so bisect.
  double d_lo = std::numeric_limits<double>::infinity();
  {
    double hi = 0.5 - 1e-9;
    if (steep_margin(s.rotation, eig.beta, hi, 4000) > 0.0) {
      double lo = 1e-9;
      if (steep_margin(s.rotation, eig.beta, lo, 4000) > 0.0) {
        d_lo = lo;
      } else {
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          (steep_margin(s.rotation, eig.beta, mid, 4000) > 0.0 ? hi : lo) = mid;
        }
        d_lo = hi;
      }
    }
  }

  double zr = s.fiber.z_r;
  for (int ip = 1; ip <= 24; ++ip) {
    double rp = 0.005 * ip;
    double c1_inv = min_fiber_deriv_on(s.fiber, zr - rp, zr + rp, 2000);
    if (c1_inv <= rep.base_norm) continue;
    double gl = fiber_eval(s.fiber, wrap_unit(zr - rp));
    double gr = fiber_eval(s.fiber, wrap_unit(zr + rp));
    // g expands around z_r, so g(I+) sticks out of I+ on both sides; the two
    // overhang components bound d from above (d must fit under both).
    double d_hi = std::min((zr - rp) - gl, gr - (zr + rp));
    if (d_hi <= 0.0 || d_lo >= d_hi) continue;
    for (int im = 1; im <= 6; ++im) {
      double rm = 0.05 * im;
      double c0 = max_fiber_deriv_on(s.fiber, -rm, rm, 2000);
      if (c0 >= 1.0) continue;
      double gap = std::min(gl - rm, (1.0 - rm) - gr);
      if (gap <= 0.0) continue;

      B3Witness w;
      w.i_plus_radius = rp;
      w.i_minus_radius = rm;
      w.d_lo = d_lo;
      w.d_hi = d_hi;
      w.d = 0.5 * (d_lo + d_hi);
      w.c1_inv = c1_inv;
      w.c0 = c0;
      w.cap_c0 = c1_inv / rep.base_norm;
      w.disjoint_gap = gap;
      w.steep_margin = steep_margin(s.rotation, eig.beta, w.d, 4000);
      w.margin = std::min({w.cap_c0 - 1.0, 1.0 - w.c0, w.disjoint_gap,
                           0.5 * (d_hi - d_lo), w.steep_margin});
      rep.candidates.push_back(w);
    }
  }

  if (rep.candidates.empty()) {
    rep.b3.pass = false;
    rep.b3.detail = std::isinf(d_lo)
                        ? "rotation profile is never steep enough for any d"
                        : "no interval pair around (z_r, z_a) satisfies every clause";
    return rep;
  }
  auto best = std::max_element(rep.candidates.begin(), rep.candidates.end(),
                               [](const B3Witness& a, const B3Witness& b) {
                                 return a.margin < b.margin;
                               });
  rep.witness = *best;
  rep.b3.pass = true;
  rep.b3.detail = num(static_cast<double>(rep.candidates.size())) +
                  " feasible interval pairs; best margin " + num(best->margin) +
                  " at I+ radius " + num(best->i_plus_radius) + ", I- radius " +
                  num(best->i_minus_radius) + ", d in (" + num(best->d_lo) + ", " +
                  num(best->d_hi) + ")";
  return rep;
}

}  // namespace skewlab
