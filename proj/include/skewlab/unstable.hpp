#pragma once

#include "skewlab/system.hpp"

namespace skewlab {

struct UnstableDirection {
  Vec3 e;                   // unit vector, positive component along du
  double slope = 0.0;       // vz / vu in the {du, d_z} frame
  int n_back_used = 0;
  double cauchy_gap = 0.0;  // slope change from the five extra pullback steps
};

// E^u(p) by pushing the base unstable vector forward from a deep preimage.
// The pushforward acts on the frame slope as s -> (g' r' beta + g' s) / alpha_u,
// a contraction by g'/alpha_u, so the recursion converges geometrically and
// never overflows. Verified by comparing depths n_back and n_back + 5; throws
// NonConvergence when that gap exceeds tol.
UnstableDirection unstable_direction(const SystemSpec& s, const Point3& p,
                                     int n_back = 40, double tol = 1e-10);

}  // namespace skewlab
