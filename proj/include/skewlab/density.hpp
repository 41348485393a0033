#pragma once

#include <functional>
#include <vector>

#include "skewlab/curve.hpp"

namespace skewlab {

struct DensityProfile {
  std::vector<double> rho;     // per node, trapezoid-normalized to total mass 1
  double normalization = 0.0;  // raw trapezoid integral that was divided out
};

// Reference density from backward unstable-Jacobian ratios:
//   log rho(p) - log rho(ref) = sum_{j>=1} [log Ju(F^-j ref) - log Ju(F^-j p)]
// where Ju is the norm growth along E^u in the {du, d_z} frame. Terms decay
// like alpha_u^-j because backward arclength between the orbits contracts, so
// the sum is cut at n_trunc terms or once a term falls below tol. Slopes
// along each backward orbit are recovered by seeding zero n_extra levels
// deeper than the truncation needs.
DensityProfile rho_density(const SystemSpec& s, const UnstableCurve& curve,
                           int n_trunc = 40, double tol = 1e-12, int n_extra = 20);

// Max over node pairs within arclength ell of the density ratio.
double distortion_bound(const UnstableCurve& curve, const DensityProfile& profile,
                        double ell);

// Trapezoid integral of f against mu_W = rho d(arclength).
double curve_integral(const UnstableCurve& curve, const DensityProfile& profile,
                      const std::function<double(const Point3&)>& f);

}  // namespace skewlab
