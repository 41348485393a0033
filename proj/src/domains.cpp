#include "skewlab/domains.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "skewlab/assumptions.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

std::vector<FundamentalDomain> fundamental_domains(const UnstableCurve& curve,
                                                   double z_a) {
  std::vector<FundamentalDomain> out;
  const auto& nodes = curve.nodes;
  if (nodes.size() < 2 || curve.span() < 1.0) return out;

  double lo = nodes.front().lifted_z;
  double hi = nodes.back().lifted_z;
  // Crossing targets z_a + m, anchored strictly inside the lift range.
  double first_target = z_a + std::ceil(lo - z_a);
  if (first_target < lo) first_target += 1.0;

  auto index_at_or_above = [&](double target) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), target,
                               [](const CurveNode& n, double t) { return n.lifted_z < t; });
    return static_cast<std::size_t>(it - nodes.begin());
  };

  for (double t = first_target; t + 1.0 <= hi; t += 1.0) {
    FundamentalDomain d;
    d.first = index_at_or_above(t);
    d.z_lift_lo = t;
    std::size_t after = index_at_or_above(t + 1.0);
    if (after == 0) continue;
    d.last = (after < nodes.size() && nodes[after].lifted_z == t + 1.0) ? after : after - 1;
    if (d.last > d.first) out.push_back(d);
  }
  return out;
}

namespace {

// Point where the lifted fiber coordinate crosses target inside the segment
// (i_hi - 1, i_hi]. Quadratic through three neighboring nodes in the curve
// parameter, with x and y unwrapped locally. Snapping to the nearest node
// instead would leave an O(h) boundary error in the domain integrals.
Point3 crossing_point(const UnstableCurve& curve, std::size_t i_hi, double target) {
  const auto& nodes = curve.nodes;
  if (nodes[i_hi].lifted_z == target) return nodes[i_hi].p;

  std::size_t j0 = (i_hi >= 2) ? i_hi - 2 : 0;
  std::size_t n_st = std::min<std::size_t>(3, nodes.size() - j0);
  double t[3], z[3], x[3], y[3];
  for (std::size_t k = 0; k < n_st; ++k) {
    const CurveNode& nd = nodes[j0 + k];
    t[k] = nd.param;
    z[k] = nd.lifted_z;
    if (k == 0) {
      x[0] = nd.p.x;
      y[0] = nd.p.y;
    } else {
      x[k] = x[k - 1] + lift_delta(nd.p.x, nodes[j0 + k - 1].p.x);
      y[k] = y[k - 1] + lift_delta(nd.p.y, nodes[j0 + k - 1].p.y);
    }
  }
  // Newton-form divided differences; a two-node stencil degrades to linear.
  auto diffs = [&](const double* f, double* d) {
    d[0] = (f[1] - f[0]) / (t[1] - t[0]);
    d[1] = (n_st == 3) ? ((f[2] - f[1]) / (t[2] - t[1]) - d[0]) / (t[2] - t[0]) : 0.0;
  };
  double dz[2], dx[2], dy[2];
  diffs(z, dz);
  diffs(x, dx);
  diffs(y, dy);
  auto eval = [&](const double* f, const double* d, double u) {
    return f[0] + d[0] * (u - t[0]) + d[1] * (u - t[0]) * (u - t[1]);
  };

  double ta = nodes[i_hi - 1].param;
  double tb = nodes[i_hi].param;
  double u = ta + (target - nodes[i_hi - 1].lifted_z) /
                      (nodes[i_hi].lifted_z - nodes[i_hi - 1].lifted_z) * (tb - ta);
  for (int it = 0; it < 3; ++it) {
    double slope = dz[0] + dz[1] * (2.0 * u - t[0] - t[1]);
    if (std::abs(slope) < 1e-300) break;
    u -= (eval(z, dz, u) - target) / slope;
  }
  u = std::clamp(u, ta, tb);
  return Point3{wrap_unit(eval(x, dx, u)), wrap_unit(eval(y, dy, u)), wrap_unit(target)};
}

UnstableCurve pullback_subcurve(const SystemSpec& s, const UnstableCurve& curve,
                                const FundamentalDomain& dom) {
  const auto& nodes = curve.nodes;
  if (dom.last >= nodes.size() || dom.last <= dom.first) {
    throw Error("cc_integral: bad fundamental domain range");
  }
  double lo = dom.z_lift_lo;
  double hi = lo + 1.0;
  std::vector<Point3> pts;
  pts.reserve(dom.last - dom.first + 3);
  if (nodes[dom.first].lifted_z > lo && dom.first > 0) {
    pts.push_back(crossing_point(curve, dom.first, lo));
  }
  for (std::size_t i = dom.first; i <= dom.last; ++i) pts.push_back(nodes[i].p);
  if (nodes[dom.last].lifted_z < hi && dom.last + 1 < nodes.size()) {
    pts.push_back(crossing_point(curve, dom.last + 1, hi));
  }
  for (auto& p : pts) p = coupled_inverse(s, p);
  return curve_from_points(pts, curve.h_max);
}

double log_central(const SystemSpec& s, const Point3& p) {
  double zs = wrap_unit(p.z + rotation_eval(s.rotation, p.x));
  return std::log(fiber_deriv(s.fiber, zs));
}

// Composite Simpson over [a, b]; n is rounded up to the next odd count.
double simpson(double a, double b, long n, const std::function<double(double)>& f) {
  if (n < 3) n = 3;
  if (n % 2 == 0) ++n;
  double h = (b - a) / static_cast<double>(n - 1);
  double acc = f(a) + f(b);
  for (long i = 1; i < n - 1; ++i) {
    acc += f(a + h * static_cast<double>(i)) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

}  // namespace

double cc_integral(const SystemSpec& s, const UnstableCurve& curve,
                   const FundamentalDomain& dom, int n_trunc) {
  UnstableCurve pre = pullback_subcurve(s, curve, dom);
  DensityProfile rho = rho_density(s, pre, n_trunc);
  return curve_integral(pre, rho,
                        [&](const Point3& p) { return log_central(s, p); });
}

double cc_integral_uniform_s(const SystemSpec& s, const UnstableCurve& curve,
                             const FundamentalDomain& dom) {
  UnstableCurve pre = pullback_subcurve(s, curve, dom);
  const auto& nodes = pre.nodes;
  // s = z + r(x) lifts monotonically and sweeps one full turn over the
  // pullback of a fundamental domain.
  std::vector<double> lift(nodes.size());
  double prev_u = wrap_unit(nodes[0].p.z + rotation_eval(s.rotation, nodes[0].p.x));
  lift[0] = prev_u;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    double u = wrap_unit(nodes[i].p.z + rotation_eval(s.rotation, nodes[i].p.x));
    lift[i] = lift[i - 1] + lift_delta(u, prev_u);
    prev_u = u;
  }
  double span = lift.back() - lift.front();
  if (span <= 0.0) throw Error("cc_integral_uniform_s: degenerate pullback span");
  double acc = 0.0;
  double prev_f = std::log(fiber_deriv(s.fiber, wrap_unit(lift[0])));
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    double f = std::log(fiber_deriv(s.fiber, wrap_unit(lift[i])));
    acc += 0.5 * (prev_f + f) * (lift[i] - lift[i - 1]);
    prev_f = f;
  }
  return acc / span;
}

CCSufficient cc_sufficient_lhs(const SystemSpec& s, long quad_points) {
  AssumptionsReportA rep = check_assumptions_A(s);
  if (!rep.all_pass()) {
    const ClauseReport& bad = !rep.a1.pass ? rep.a1 : (!rep.a2.pass ? rep.a2 : rep.a3);
    throw AssumptionError("cc_sufficient_lhs: " + bad.id + " fails (" + bad.detail + ")");
  }

  CCSufficient out;
  switch (s.fiber.family) {
    case FiberFamily::Sine:
      out.i_plus_lo = 0.25;
      out.i_plus_hi = 0.75;
      break;
    case FiberFamily::Projective: {
      double zstar = std::atan(1.0 / std::sqrt(s.fiber.par)) / M_PI;
      out.i_plus_lo = zstar;
      out.i_plus_hi = 1.0 - zstar;
      break;
    }
  }

  auto f = [&](double z) { return std::log(fiber_deriv(s.fiber, wrap_unit(z))); };
  double total = simpson(0.0, 1.0, quad_points, f);
  out.int_plus = simpson(out.i_plus_lo, out.i_plus_hi, quad_points, f);
  out.int_minus = total - out.int_plus;
  out.k_a = 1.0;
  out.bracket = (rep.c_hi * out.k_a * out.k_a / (rep.c_lo * rep.beta)) *
                (1.0 + 2.0 * rep.lam_max / (rep.alpha_u - rep.lam_max));
  out.value = out.bracket * out.int_plus + out.int_minus;
  return out;
}

}  // namespace skewlab
