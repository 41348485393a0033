#pragma once

#include <cstdint>

#include "skewlab/system.hpp"

namespace skewlab {

// Cone constants in the frame {unit unstable base vector, fiber unit vector}:
//   a = 2 lam_max C / (alpha_u_min - lam_max),  b = lam_min c beta / alpha_u_max,
// with c, C the bounds on r' and alpha_u_min = alpha_u_max for a linear base.
struct ConeParams {
  double a = 0.0;
  double b = 0.0;
  double sigma_observed = 0.0;  // filled in by verify_cone
};

// Throws AssumptionError unless the monotone-coupling hypotheses hold.
ConeParams cone_params(const SystemSpec& s);

// Coefficients of a tangent vector in the frame {du embedded in the base, d_z}.
struct CUVector {
  double vu = 0.0, vz = 0.0;
};

// Restriction of the derivative to E^u_A + <d_z>, i.e. the matrix
// [[alpha_u, 0], [g' r' beta, g']] acting on frame coefficients. delta = 0 only.
CUVector push_cu_vector(const SystemSpec& s, const Point3& p, const CUVector& v);

struct ConeCheck {
  long violations = 0;
  double sigma_observed = 0.0;   // min over samples of a - image slope
  double min_image_slope = 0.0;  // compare against b
};

// Pushes boundary vectors of the cone {0 <= vz/vu <= a} at random points and
// counts landings outside {b <= vz/vu <= a}. The image slope is affine
// increasing in the input slope, so checking the two boundaries is enough.
// Pass `params` to audit one system against another system's cone (used to
// demonstrate that the uncoupled map escapes the coupled cone); by default
// the system's own constants are used.
ConeCheck verify_cone(const SystemSpec& s, long n_samples, std::uint64_t seed,
                      const ConeParams* params = nullptr);

// Growth constant of the cone lemma: min over sampled in-cone vectors and
// n <= n_max of ||DF^n v|| / (alpha_u^n ||v||), with vectors embedded in R^3.
double cone_growth_constant(const SystemSpec& s, long n_samples, int n_max,
                            std::uint64_t seed);

}  // namespace skewlab
