#include "skewlab/system.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Point3 stage_shear(const SystemSpec& s, const Point3& p) {
  return {p.x, p.y, wrap_unit(p.z + rotation_eval(s.rotation, p.x))};
}

Point3 stage_fiber(const SystemSpec& s, const Point3& p) {
  return {p.x, p.y, fiber_eval(s.fiber, p.z)};
}

Point3 stage_base(const SystemSpec& s, const Point3& p) {
  Point2 b = anosov_apply(s.anosov, {p.x, p.y});
  return {b.x, b.y, p.z};
}

}  // namespace

double det(const Jacobian3& j) {
  const auto& m = j.m;
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Point3 coupled_apply(const SystemSpec& s, const Point3& p) {
  if (s.delta == 0.0) {
    // Same composition as decompose_apply so the two agree bit for bit.
    return stage_base(s, stage_fiber(s, stage_shear(s, p)));
  }
  Point2 b = anosov_apply(s.anosov, {p.x, p.y});
  double z1 = fiber_eval(s.fiber, wrap_unit(p.z + rotation_eval(s.rotation, p.x)));
  double bx = b.x + s.delta * std::sin(kTwoPi * p.z);
  double by = b.y + s.delta * std::cos(kTwoPi * p.z);
  double z = z1 + s.delta * std::sin(kTwoPi * (p.x + p.y));
  return wrap({bx, by, z});
}

Point3 coupled_inverse(const SystemSpec& s, const Point3& p) {
  if (s.delta != 0.0) {
    throw Error("coupled_inverse: only the delta = 0 skew product is invertible in closed form");
  }
  Point2 b = anosov_inverse_apply(s.anosov, {p.x, p.y});
  double z_pre = fiber_inverse(s.fiber, p.z);
  double z = wrap_unit(z_pre - rotation_eval(s.rotation, b.x));
  return {b.x, b.y, z};
}

Jacobian3 coupled_jacobian(const SystemSpec& s, const Point3& p) {
  double rp = rotation_deriv(s.rotation, p.x);
  double zs = wrap_unit(p.z + rotation_eval(s.rotation, p.x));
  double gp = fiber_deriv(s.fiber, zs);

  Jacobian3 j;
  j.m[0][0] = static_cast<double>(s.anosov.m11);
  j.m[0][1] = static_cast<double>(s.anosov.m12);
  j.m[1][0] = static_cast<double>(s.anosov.m21);
  j.m[1][1] = static_cast<double>(s.anosov.m22);
  j.m[2][0] = gp * rp;
  j.m[2][1] = 0.0;
  j.m[2][2] = gp;

  if (s.delta != 0.0) {
    double cz = s.delta * kTwoPi * std::cos(kTwoPi * p.z);
    double sz = -s.delta * kTwoPi * std::sin(kTwoPi * p.z);
    double cb = s.delta * kTwoPi * std::cos(kTwoPi * (p.x + p.y));
    j.m[0][2] = cz;
    j.m[1][2] = sz;
    j.m[2][0] += cb;
    j.m[2][1] += cb;
  }
  return j;
}

std::array<Point3, 3> decompose_apply(const SystemSpec& s, const Point3& p) {
  if (s.delta != 0.0) {
    throw Error("decompose_apply: stage decomposition exists only for delta = 0");
  }
  Point3 a = stage_shear(s, p);
  Point3 b = stage_fiber(s, a);
  Point3 c = stage_base(s, b);
  return {a, b, c};
}

double min_jacobian_det(const SystemSpec& s, int n) {
  if (n < 2) throw ConfigError("min_jacobian_det: need n >= 2");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int jy = 0; jy < n; ++jy) {
      for (int k = 0; k < n; ++k) {
        Point3 p{(i + 0.37) / n, (jy + 0.41) / n, (k + 0.29) / n};
        double d = det(coupled_jacobian(s, p));
        if (d < best) best = d;
      }
    }
  }
  return best;
}

void validate(const SystemSpec& s) {
  eigendata(s.anosov);  // throws when the base family degenerates
  if (s.delta < 0.0) throw ConfigError("validate: delta must be >= 0");
  if (s.delta > 0.0) {
    // The floor is relative to the unperturbed map: a strongly contracting
    // fiber already has a small determinant, and the certification only has
    // to rule out the perturbation folding the map, not penalize the fiber.
    SystemSpec base = s;
    base.delta = 0.0;
    double d = min_jacobian_det(s, 13);
    double d0 = min_jacobian_det(base, 13);
    if (d <= 0.5 * d0) {
      throw ConfigError("validate: delta = " + std::to_string(s.delta) +
                        " drives the sampled Jacobian determinant to " + std::to_string(d) +
                        "; keep it above half the delta = 0 floor " + std::to_string(d0));
    }
  }
}

}  // namespace skewlab
