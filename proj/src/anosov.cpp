#include "skewlab/anosov.hpp"

#include <cmath>
#include <string>

#include "skewlab/errors.hpp"

namespace skewlab {

AnosovSpec anosov_family(int n) {
  if (n < 2) throw AssumptionError("anosov_family: need n >= 2");
  return {n, n - 1, 1, 1};
}

EigenData eigendata(const AnosovSpec& a) {
  const long det = static_cast<long>(a.m11) * a.m22 - static_cast<long>(a.m12) * a.m21;
  if (det != 1)
    throw AssumptionError("eigendata: determinant must be 1, got " + std::to_string(det));
  const int trace = a.m11 + a.m22;
  if (trace < 3)
    throw AssumptionError("eigendata: trace must be >= 3, got " + std::to_string(trace));

  EigenData e;
  const double t = trace;
  const double disc = std::sqrt(t * t - 4.0);
  e.alpha_u = (t + disc) / 2.0;
  e.alpha_s = 1.0 / e.alpha_u;

  // Eigenvector for eigenvalue lam: (m12, lam - m11) or (lam - m22, m21).
  // Pick per-eigenvalue whichever candidate has the larger norm.
  auto eigvec = [&](double lam) {
    Vec2 v1{static_cast<double>(a.m12), lam - a.m11};
    Vec2 v2{lam - a.m22, static_cast<double>(a.m21)};
    Vec2 v = norm(v1) >= norm(v2) ? v1 : v2;
    double n = norm(v);
    return Vec2{v.x / n, v.y / n};
  };

  e.du = eigvec(e.alpha_u);
  if (e.du.x < 0) e.du = {-e.du.x, -e.du.y};
  e.ds = eigvec(e.alpha_s);
  if (e.ds.x > 0) e.ds = {-e.ds.x, -e.ds.y};

  if (std::fabs(e.du.x) < 1e-12 || std::fabs(e.ds.x) < 1e-12)
    throw AssumptionError("eigendata: eigenvector aligned with the y-axis");
  e.beta = e.du.x;
  return e;
}

double spectral_norm(const AnosovSpec& a) {
  // Largest singular value of an integer det-1 matrix: with p = sum of squared
  // entries, sigma_max^2 = (p + sqrt(p^2 - 4)) / 2.
  const double p = double(a.m11) * a.m11 + double(a.m12) * a.m12 +
                   double(a.m21) * a.m21 + double(a.m22) * a.m22;
  return std::sqrt((p + std::sqrt(p * p - 4.0)) / 2.0);
}

Point2 anosov_apply(const AnosovSpec& a, const Point2& p) {
  return {wrap_unit(a.m11 * p.x + a.m12 * p.y),
          wrap_unit(a.m21 * p.x + a.m22 * p.y)};
}

Point2 anosov_inverse_apply(const AnosovSpec& a, const Point2& p) {
  // det = 1, so the inverse is [[m22, -m12], [-m21, m11]].
  return {wrap_unit(a.m22 * p.x - a.m12 * p.y),
          wrap_unit(-a.m21 * p.x + a.m11 * p.y)};
}

}  // namespace skewlab
