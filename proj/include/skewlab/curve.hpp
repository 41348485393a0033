#pragma once

#include <vector>

#include "skewlab/system.hpp"

namespace skewlab {

struct CurveNode {
  Point3 p;
  double lifted_z = 0.0;  // continuous fiber lift along the curve
  double param = 0.0;     // cumulative arclength from the first node
};

// Polyline tracking a W^u segment. Consecutive spacing stays at or below
// h_max; with monotone coupling the lifted fiber coordinate increases
// strictly along the curve.
struct UnstableCurve {
  std::vector<CurveNode> nodes;
  double h_max = 1e-3;
  double span() const;    // total fiber winding
  double length() const;  // total arclength
};

// Rebuilds lift and arclength bookkeeping for an ordered point sequence.
// Spacing must stay below half a period so displacements are unambiguous.
UnstableCurve curve_from_points(const std::vector<Point3>& pts, double h_max);

// Segment of arclength len centered at p, grown by midpoint-rule integration
// of the unstable direction field at steps of h_max. Requires the fiber
// expansion to be dominated (lam_max < alpha_u), otherwise the direction
// field is not computable this way.
UnstableCurve seed_unstable_segment(const SystemSpec& s, const Point3& p,
                                    double len, double h_max = 1e-3);

// Image of the curve under F^steps. Whenever an image segment exceeds h_max
// the source midpoint is mapped and inserted, recursively. Throws
// NodeCapExceeded when the refined curve would outgrow node_cap.
UnstableCurve evolve_and_refine(const SystemSpec& s, const UnstableCurve& curve,
                                int steps, long node_cap = 4000000);

// Arclength of the projection to the base torus.
double base_projection_length(const UnstableCurve& curve);

}  // namespace skewlab
