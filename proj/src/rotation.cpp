#include "skewlab/rotation.hpp"

#include <cmath>
#include <string>

#include "skewlab/errors.hpp"
#include "skewlab/torus.hpp"

namespace skewlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double smoothstep5(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep5_deriv(double t) {
  const double u = t * (1.0 - t);
  return 30.0 * u * u;
}
}  // namespace

RotationSpec no_rotation() { return {RotationVariant::None, 0.0, 0.0, 0.0}; }

RotationSpec linear_rotation() { return {RotationVariant::Linear, 0.0, 0.0, 0.0}; }

RotationSpec smooth_rotation(double s) {
  if (!(s >= 0.0 && s < 1.0))
    throw ConfigError("smooth_rotation: amplitude must lie in [0, 1), got " +
                      std::to_string(s));
  return {RotationVariant::Smooth, s, 0.0, 0.0};
}

RotationSpec rare_rotation(double eps, double x0) {
  if (!(eps > 0.0 && eps < 1.0))
    throw ConfigError("rare_rotation: window width must lie in (0, 1), got " +
                      std::to_string(eps));
  return {RotationVariant::Rare, 0.0, eps, wrap_unit(x0)};
}

double rotation_eval(const RotationSpec& r, double x) {
  x = wrap_unit(x);
  switch (r.variant) {
    case RotationVariant::None:
      return 0.0;
    case RotationVariant::Linear:
      return x;
    case RotationVariant::Smooth:
      return wrap_unit(x + r.s / kTwoPi * std::sin(kTwoPi * x));
    case RotationVariant::Rare: {
      const double u = wrap_unit(x - r.x0);
      if (u >= r.eps) return 0.0;
      return wrap_unit(smoothstep5(u / r.eps));
    }
  }
  return 0.0;
}

double rotation_deriv(const RotationSpec& r, double x) {
  switch (r.variant) {
    case RotationVariant::None:
      return 0.0;
    case RotationVariant::Linear:
      return 1.0;
    case RotationVariant::Smooth:
      return 1.0 + r.s * std::cos(kTwoPi * wrap_unit(x));
    case RotationVariant::Rare: {
      const double u = wrap_unit(x - r.x0);
      if (u >= r.eps) return 0.0;
      return smoothstep5_deriv(u / r.eps) / r.eps;
    }
  }
  return 0.0;
}

double rotation_c_lo(const RotationSpec& r) {
  switch (r.variant) {
    case RotationVariant::None:
      return 0.0;
    case RotationVariant::Linear:
      return 1.0;
    case RotationVariant::Smooth:
      return 1.0 - r.s;
    case RotationVariant::Rare:
      return 0.0;
  }
  return 0.0;
}

double rotation_c_hi(const RotationSpec& r) {
  switch (r.variant) {
    case RotationVariant::None:
      return 0.0;
    case RotationVariant::Linear:
      return 1.0;
    case RotationVariant::Smooth:
      return 1.0 + r.s;
    case RotationVariant::Rare:
      return 1.875 / r.eps;
  }
  return 0.0;
}

}  // namespace skewlab
