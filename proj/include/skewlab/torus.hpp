#pragma once

#include <cmath>

namespace skewlab {

// Circle coordinates live in [0, 1). wrap_unit is the one reduction routine
// used everywhere; lift_delta is the matching signed displacement in
// (-1/2, 1/2], so displacement arithmetic is consistent across modules.
inline double wrap_unit(double v) {
  double w = v - std::floor(v);
  return w < 1.0 ? w : 0.0;
}

inline double lift_delta(double to, double from) {
  double d = wrap_unit(to - from);
  return d > 0.5 ? d - 1.0 : d;
}

struct Point2 {
  double x = 0.0, y = 0.0;
};

struct Point3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

struct Vec2 {
  double x = 0.0, y = 0.0;
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double norm(const Vec3& v) {
  return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

inline Point3 wrap(const Point3& p) {
  return {wrap_unit(p.x), wrap_unit(p.y), wrap_unit(p.z)};
}

// Componentwise displacement from `from` to `to`, each entry in (-1/2, 1/2].
inline Vec3 lift_delta(const Point3& to, const Point3& from) {
  return {lift_delta(to.x, from.x), lift_delta(to.y, from.y),
          lift_delta(to.z, from.z)};
}

inline double torus_dist(const Point3& a, const Point3& b) {
  return norm(lift_delta(a, b));
}

inline double torus_dist2(const Point2& a, const Point2& b) {
  return std::hypot(lift_delta(a.x, b.x), lift_delta(a.y, b.y));
}

}  // namespace skewlab
