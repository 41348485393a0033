#pragma once

#include <vector>

#include "skewlab/torus.hpp"

namespace skewlab {

struct SecantScaleResult {
  double scale = 0.0;
  double min_angle_deg = 90.0;  // angle between the secant and the fiber axis
  Point3 p_a, p_b;              // argmin pair
  long pairs_tested = 0;
};

// For each scale eps: over point pairs whose base distance is at most eps,
// the minimum angle between the secant vector and the d/dz axis, in degrees.
// Pairs come from a base-plane cell hash (cell size eps, 3x3 neighborhoods);
// dense cells keep only their first points so that the total comparison count
// stays near pair_budget. Deterministic for a fixed cloud order.
std::vector<SecantScaleResult> secant_probe(const std::vector<Point3>& cloud,
                                            const std::vector<double>& scales,
                                            long pair_budget);

}  // namespace skewlab
