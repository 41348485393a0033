#pragma once

#include <vector>

#include "skewlab/system.hpp"

namespace skewlab {

struct GraphLevelStat {
  int grid_log2 = 0;
  int iters = 0;
  double final_change = 0.0;  // sup-norm change at the last iteration
  double sup_abs_h = 0.0;
  double max_slope = 0.0;  // max over grid points of |dh| * grid, both axes
};

struct GraphTransformResult {
  std::vector<GraphLevelStat> levels;
  std::vector<double> h;  // finest grid, index ix + grid*iy, values unwrapped near z_a
  int grid = 0;
};

// Attractor graph h of the skew perturbation (base feedback off):
//     h(A w) = g(h(w)) + delta * sin(2pi (x + y)) at w = (x, y),
// solved by fixed-point iteration on uniform base grids 2^log2_min ..
// 2^log2_max, warm-starting each level from the previous one. A maps the
// grid onto itself, so the pullback needs no interpolation. Stops a level
// at sup-change < 1e-10 or 10^4 iterations; a persistently non-decreasing
// change is reported as NonConvergence (the fiber contraction hypothesis
// failed numerically).
GraphTransformResult graph_transform_ladder(const SystemSpec& s, double delta,
                                            int log2_min, int log2_max);

}  // namespace skewlab
