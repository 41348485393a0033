#pragma once

namespace skewlab {

// Rotation profile r: T -> T entering the fiber coordinate as z + r(x).
//
//   None:   r = 0 (uncoupled)
//   Linear: r(x) = x
//   Smooth: r(x) = x + (s/2pi) sin(2pi x), 0 <= s < 1
//   Rare:   r = 0 outside (x0, x0 + eps); inside, climbs 0 -> 1 through the
//           quintic smoothstep S(t) = 10t^3 - 15t^4 + 6t^5, which glues C^2
//           to the flat part and has peak slope 1.875/eps at the midpoint.
enum class RotationVariant { None, Linear, Smooth, Rare };

struct RotationSpec {
  RotationVariant variant = RotationVariant::Linear;
  double s = 0.0;    // Smooth wobble amplitude
  double eps = 0.0;  // Rare window width
  double x0 = 0.0;   // Rare window start
};

RotationSpec no_rotation();
RotationSpec linear_rotation();
RotationSpec smooth_rotation(double s);
RotationSpec rare_rotation(double eps, double x0);

double rotation_eval(const RotationSpec& r, double x);   // value in [0, 1)
double rotation_deriv(const RotationSpec& r, double x);

// Bounds on r' (over the climb window for Rare, where the lower bound is the
// flat-endpoint value 0).
double rotation_c_lo(const RotationSpec& r);
double rotation_c_hi(const RotationSpec& r);

}  // namespace skewlab
