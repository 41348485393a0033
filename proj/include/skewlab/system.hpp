#pragma once

#include <array>

#include "skewlab/anosov.hpp"
#include "skewlab/fiber.hpp"
#include "skewlab/rotation.hpp"
#include "skewlab/torus.hpp"

namespace skewlab {

// The coupled map on T^2 x T:
//
//   F(x, y, z) = ( A(x, y), g(z + r(x)) )                        for delta = 0
//
// and its fixed-shape perturbation for delta > 0:
//
//   G(x, y, z) = ( A(x, y) + delta (sin 2pi z, cos 2pi z),
//                  g(z + r(x)) + delta sin(2pi (x + y)) )   (mod 1)
//
// The perturbation feeds the fiber back into the base, so for delta > 0 the
// map is no longer a skew product.
struct SystemSpec {
  AnosovSpec anosov;
  FiberSpec fiber;
  RotationSpec rotation;
  double delta = 0.0;
};

// Row-major derivative matrix m[row][col] = d out_row / d in_col, with
// coordinates ordered (x, y, z).
struct Jacobian3 {
  std::array<std::array<double, 3>, 3> m{};
};

inline Vec3 apply(const Jacobian3& j, const Vec3& v) {
  return {j.m[0][0] * v.x + j.m[0][1] * v.y + j.m[0][2] * v.z,
          j.m[1][0] * v.x + j.m[1][1] * v.y + j.m[1][2] * v.z,
          j.m[2][0] * v.x + j.m[2][1] * v.y + j.m[2][2] * v.z};
}

double det(const Jacobian3& j);

Point3 coupled_apply(const SystemSpec& s, const Point3& p);

// Exact inverse of the delta = 0 map (integer base inverse plus the fiber
// Newton inverse). Throws Error when delta > 0.
Point3 coupled_inverse(const SystemSpec& s, const Point3& p);

Jacobian3 coupled_jacobian(const SystemSpec& s, const Point3& p);

// Stages of the delta = 0 composition F = f3 . f2 . f1:
//   f1 shears the fiber by the rotation profile, f2 applies g, f3 moves the
//   base. Returns the three intermediate images; the last equals
//   coupled_apply for delta = 0.
std::array<Point3, 3> decompose_apply(const SystemSpec& s, const Point3& p);

// Smallest Jacobian determinant over a uniform sampling grid (n^3 points,
// offset to avoid the fixed-point lattice).
double min_jacobian_det(const SystemSpec& s, int n = 13);

// Validates parameter ranges; for delta > 0 additionally requires the sampled
// Jacobian determinant to stay above half the unperturbed floor, so the
// perturbation cannot push the map toward a fold no matter how contracting
// the fiber already is. Throws ConfigError.
void validate(const SystemSpec& s);

}  // namespace skewlab
