#include "skewlab/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewlab/assumptions.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/rng.hpp"

namespace skewlab {

ConeParams cone_params(const SystemSpec& s) {
  AssumptionsReportA rep = check_assumptions_A(s);
  if (!rep.all_pass()) {
    const ClauseReport& bad = !rep.a1.pass ? rep.a1 : (!rep.a2.pass ? rep.a2 : rep.a3);
    throw AssumptionError("cone_params: " + bad.id + " fails (" + bad.detail + ")");
  }
  ConeParams cp;
  cp.a = 2.0 * rep.lam_max * rep.c_hi / (rep.alpha_u - rep.lam_max);
  cp.b = rep.lam_min * rep.c_lo * rep.beta / rep.alpha_u;
  return cp;
}

CUVector push_cu_vector(const SystemSpec& s, const Point3& p, const CUVector& v) {
  if (s.delta != 0.0) {
    throw Error("push_cu_vector: the CU frame is invariant only for delta = 0");
  }
  EigenData eig = eigendata(s.anosov);
  double zs = wrap_unit(p.z + rotation_eval(s.rotation, p.x));
  double gp = fiber_deriv(s.fiber, zs);
  double rp = rotation_deriv(s.rotation, p.x);
  return {eig.alpha_u * v.vu, gp * rp * eig.beta * v.vu + gp * v.vz};
}

ConeCheck verify_cone(const SystemSpec& s, long n_samples, std::uint64_t seed,
                      const ConeParams* params) {
  ConeParams own;
  if (params == nullptr) {
    own = cone_params(s);
    params = &own;
  }
  double a = params->a;
  double b = params->b;

  ConeCheck out;
  out.sigma_observed = std::numeric_limits<double>::infinity();
  out.min_image_slope = std::numeric_limits<double>::infinity();
  auto rng = stream_rng(seed, 0);
  for (long i = 0; i < n_samples; ++i) {
    Point3 p = random_point3(rng);
    CUVector v{1.0, (i % 2 == 0) ? 0.0 : a};
    CUVector w = push_cu_vector(s, p, v);
    double slope = w.vz / w.vu;
    // Guard the b-equality that the slope map attains at the fiber extremes.
    if (slope < b * (1.0 - 1e-12) || slope > a + 1e-12) ++out.violations;
    out.sigma_observed = std::min(out.sigma_observed, a - slope);
    out.min_image_slope = std::min(out.min_image_slope, slope);
  }
  return out;
}

double cone_growth_constant(const SystemSpec& s, long n_samples, int n_max,
                            std::uint64_t seed) {
  ConeParams cp = cone_params(s);
  EigenData eig = eigendata(s.anosov);
  auto rng = stream_rng(seed, 1);
  double c0 = std::numeric_limits<double>::infinity();
  for (long i = 0; i < n_samples; ++i) {
    Point3 p = random_point3(rng);
    double slope = cp.a * uniform01(rng);
    CUVector v{1.0, slope};
    double norm0 = std::hypot(v.vu, v.vz);
    double scale = 1.0;
    for (int n = 1; n <= n_max; ++n) {
      v = push_cu_vector(s, p, v);
      p = coupled_apply(s, p);
      scale /= eig.alpha_u;
      c0 = std::min(c0, std::hypot(v.vu, v.vz) * scale / norm0);
    }
  }
  return c0;
}

}  // namespace skewlab
