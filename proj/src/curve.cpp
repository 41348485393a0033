#include "skewlab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skewlab/errors.hpp"
#include "skewlab/unstable.hpp"

namespace skewlab {

double UnstableCurve::span() const {
  return nodes.empty() ? 0.0 : nodes.back().lifted_z - nodes.front().lifted_z;
}

double UnstableCurve::length() const {
  return nodes.empty() ? 0.0 : nodes.back().param;
}

UnstableCurve curve_from_points(const std::vector<Point3>& pts, double h_max) {
  UnstableCurve c;
  c.h_max = h_max;
  c.nodes.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CurveNode n;
    n.p = pts[i];
    if (i == 0) {
      n.lifted_z = pts[0].z;
      n.param = 0.0;
    } else {
      const CurveNode& prev = c.nodes.back();
      Vec3 d = lift_delta(pts[i], pts[i - 1]);
      n.lifted_z = prev.lifted_z + d.z;
      n.param = prev.param + norm(d);
    }
    c.nodes.push_back(n);
  }
  return c;
}

UnstableCurve seed_unstable_segment(const SystemSpec& s, const Point3& p,
                                    double len, double h_max) {
  if (s.fiber.lam_max >= eigendata(s.anosov).alpha_u) {
    throw AssumptionError(
        "seed_unstable_segment: fiber expansion dominates the base, the "
        "unstable direction field is not computable");
  }
  if (len <= 0.0 || h_max <= 0.0) throw ConfigError("seed_unstable_segment: bad sizes");

  auto step = [&](const Point3& q, double sign) {
    // Midpoint rule on the unit direction field keeps the tangent error at
    // O(h^2) so finite-difference tangents stay inside the cone.
    Vec3 e1 = unstable_direction(s, q).e;
    double h2 = 0.5 * sign * h_max;
    Point3 mid = wrap({q.x + h2 * e1.x, q.y + h2 * e1.y, q.z + h2 * e1.z});
    Vec3 e2 = unstable_direction(s, mid).e;
    double h = sign * h_max;
    return wrap({q.x + h * e2.x, q.y + h * e2.y, q.z + h * e2.z});
  };

  long half_steps = static_cast<long>(std::ceil(0.5 * len / h_max));
  std::vector<Point3> pts;
  pts.reserve(2 * half_steps + 1);
  Point3 q = wrap(p);
  for (long i = 0; i < half_steps; ++i) {
    q = step(q, -1.0);
    pts.push_back(q);
  }
  std::reverse(pts.begin(), pts.end());
  pts.push_back(wrap(p));
  q = wrap(p);
  for (long i = 0; i < half_steps; ++i) {
    q = step(q, +1.0);
    pts.push_back(q);
  }
  return curve_from_points(pts, h_max);
}

UnstableCurve evolve_and_refine(const SystemSpec& s, const UnstableCurve& curve,
                                int steps, long node_cap) {
  if (s.delta != 0.0) throw Error("evolve_and_refine: delta = 0 only");
  if (curve.nodes.size() < 2) throw Error("evolve_and_refine: need at least two nodes");

  UnstableCurve cur = curve;
  for (int step = 0; step < steps; ++step) {
    std::vector<Point3> pts;
    pts.reserve(cur.nodes.size() * 8);

    auto push = [&](const Point3& img) {
      if (static_cast<long>(pts.size()) >= node_cap) {
        throw NodeCapExceeded("evolve_and_refine: node cap " +
                              std::to_string(node_cap) + " hit at step " +
                              std::to_string(step + 1));
      }
      pts.push_back(img);
    };

    // Splits by source midpoint: the source segment is already below h_max,
    // so its chord is a faithful stand-in for the curve and mapped midpoints
    // land on the image curve to second order.
    auto split = [&](auto&& self, const Point3& sa, const Point3& ia,
                     const Point3& sb, const Point3& ib, int depth) -> void {
      if (torus_dist(ia, ib) <= cur.h_max) {
        push(ib);
        return;
      }
      if (depth >= 26) throw Error("evolve_and_refine: refinement depth exceeded");
      Vec3 d = lift_delta(sb, sa);
      Point3 sm = wrap({sa.x + 0.5 * d.x, sa.y + 0.5 * d.y, sa.z + 0.5 * d.z});
      Point3 im = coupled_apply(s, sm);
      self(self, sa, ia, sm, im, depth + 1);
      self(self, sm, im, sb, ib, depth + 1);
    };

    Point3 prev_src = cur.nodes[0].p;
    Point3 prev_img = coupled_apply(s, prev_src);
    push(prev_img);
    for (std::size_t i = 1; i < cur.nodes.size(); ++i) {
      Point3 sb = cur.nodes[i].p;
      Point3 ib = coupled_apply(s, sb);
      split(split, prev_src, prev_img, sb, ib, 0);
      prev_src = sb;
      prev_img = ib;
    }
    cur = curve_from_points(pts, cur.h_max);
  }
  return cur;
}

double base_projection_length(const UnstableCurve& curve) {
  double len = 0.0;
  for (std::size_t i = 1; i < curve.nodes.size(); ++i) {
    Vec3 d = lift_delta(curve.nodes[i].p, curve.nodes[i - 1].p);
    len += std::hypot(d.x, d.y);
  }
  return len;
}

}  // namespace skewlab
