#include "skewlab/secant_probe.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

struct PairScan {
  const std::vector<Point3>& cloud;
  double eps;
  SecantScaleResult* out;

  void consider(std::int32_t ia, std::int32_t ib) {
    const Point3& a = cloud[ia];
    const Point3& b = cloud[ib];
    double dx = lift_delta(b.x, a.x);
    double dy = lift_delta(b.y, a.y);
    double dbase = std::hypot(dx, dy);
    if (dbase > eps) return;
    double dz = std::fabs(lift_delta(b.z, a.z));
    if (dbase == 0.0 && dz == 0.0) return;  // duplicate sample
    ++out->pairs_tested;
    double ang = std::atan2(dbase, dz) * (180.0 / M_PI);
    if (ang < out->min_angle_deg) {
      out->min_angle_deg = ang;
      out->p_a = a;
      out->p_b = b;
    }
  }
};

}  // namespace

std::vector<SecantScaleResult> secant_probe(const std::vector<Point3>& cloud,
                                            const std::vector<double>& scales,
                                            long pair_budget) {
  if (cloud.size() < 2) throw ConfigError("secant_probe: need at least two points");
  std::vector<SecantScaleResult> results;

  for (double eps : scales) {
    if (!(eps > 0.0) || eps > 0.5) throw ConfigError("secant_probe: scale out of (0, 0.5]");
    int ncell = std::max(1, static_cast<int>(std::floor(1.0 / eps)));
    std::size_t total_cells = static_cast<std::size_t>(ncell) * ncell;
    // Per-cell cap keeping the comparison count near the budget: each kept
    // point meets ~4.5 cells' worth of partners in the half stencil.
    std::size_t cap = static_cast<std::size_t>(std::max(
        8.0, std::floor(std::sqrt(static_cast<double>(pair_budget) /
                                  (4.5 * static_cast<double>(total_cells))))));

    std::vector<std::vector<std::int32_t>> buckets(total_cells);
    for (std::size_t k = 0; k < cloud.size(); ++k) {
      int cx = static_cast<int>(wrap_unit(cloud[k].x) * ncell);
      int cy = static_cast<int>(wrap_unit(cloud[k].y) * ncell);
      if (cx >= ncell) cx = ncell - 1;
      if (cy >= ncell) cy = ncell - 1;
      auto& b = buckets[static_cast<std::size_t>(cy) * ncell + cx];
      if (b.size() < cap) b.push_back(static_cast<std::int32_t>(k));
    }

    SecantScaleResult res;
    res.scale = eps;
    PairScan scan{cloud, eps, &res};
    // Half stencil covers every unordered neighbor-cell pair exactly once.
    const int off[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};
    for (int cy = 0; cy < ncell; ++cy) {
      for (int cx = 0; cx < ncell; ++cx) {
        const auto& own = buckets[static_cast<std::size_t>(cy) * ncell + cx];
        if (own.empty()) continue;
        for (std::size_t i = 0; i < own.size(); ++i) {
          for (std::size_t j = i + 1; j < own.size(); ++j) scan.consider(own[i], own[j]);
        }
        if (ncell == 1) continue;
        for (const auto& d : off) {
          int nx = (cx + d[0] + ncell) % ncell;
          int ny = (cy + d[1] + ncell) % ncell;
          if (ncell == 2 && (nx == cx && ny == cy)) continue;
          const auto& other = buckets[static_cast<std::size_t>(ny) * ncell + nx];
          for (std::int32_t ia : own) {
            for (std::int32_t ib : other) scan.consider(ia, ib);
          }
        }
      }
    }
    results.push_back(res);
  }
  return results;
}

}  // namespace skewlab
