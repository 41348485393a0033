#pragma once

#include <vector>

#include "skewlab/curve.hpp"
#include "skewlab/density.hpp"

namespace skewlab {

// Contiguous node range [first, last] whose lifted fiber coordinate spans
// exactly one full turn, cut at crossings of z = z_a (mod 1). The node range
// is snapped inward, so the exact crossing lifts are carried alongside for
// quadrature that needs sub-node endpoints.
struct FundamentalDomain {
  std::size_t first = 0;
  std::size_t last = 0;
  double z_lift_lo = 0.0;  // exact lift of the entry crossing; exit is +1
};

std::vector<FundamentalDomain> fundamental_domains(const UnstableCurve& curve,
                                                   double z_a = 0.0);

// CC quadrature: pulls the domain back one step, computes the reference
// density on the pulled-back curve, and integrates the log central
// derivative log g'(z + r(x)) against it.
double cc_integral(const SystemSpec& s, const UnstableCurve& curve,
                   const FundamentalDomain& dom, int n_trunc = 40);

// Test mode: the density is replaced by the uniform measure in the variable
// s = z + r(x), which sweeps exactly one turn over the pullback, so the
// result must equal the circle integral of log g'.
double cc_integral_uniform_s(const SystemSpec& s, const UnstableCurve& curve,
                             const FundamentalDomain& dom);

struct CCSufficient {
  double value = 0.0;      // bracket * int_plus + int_minus; negative => CC holds
  double bracket = 0.0;    // (C K_A^2 / (c beta)) (1 + 2 lam_max / (alpha_u - lam_max))
  double int_plus = 0.0;   // integral of log g' over {g' >= 1}
  double int_minus = 0.0;  // integral of log g' over {g' < 1}
  double i_plus_lo = 0.0, i_plus_hi = 0.0;
  double k_a = 1.0;        // base distortion constant, exactly 1 for a matrix
};

// Closed-form interval boundaries plus composite Simpson quadrature. Throws
// AssumptionError when the monotone-coupling hypotheses fail.
CCSufficient cc_sufficient_lhs(const SystemSpec& s, long quad_points = 200001);

}  // namespace skewlab
