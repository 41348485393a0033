#include "skewlab/graph_transform.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

constexpr double kTol = 1e-10;
constexpr int kMaxIters = 10000;

inline std::int64_t imod(std::int64_t v, std::int64_t g) {
  std::int64_t m = v % g;
  return m < 0 ? m + g : m;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double max_grid_slope(const std::vector<double>& h, int g) {
  double m = 0.0;
  for (int j = 0; j < g; ++j) {
    int jn = (j + 1 == g) ? 0 : j + 1;
    const double* row = h.data() + static_cast<std::size_t>(j) * g;
    const double* up = h.data() + static_cast<std::size_t>(jn) * g;
    for (int i = 0; i < g; ++i) {
      int in = (i + 1 == g) ? 0 : i + 1;
      m = std::max(m, std::fabs(row[in] - row[i]));
      m = std::max(m, std::fabs(up[i] - row[i]));
    }
  }
  return m * g;
}

// Doubles the grid with periodic bilinear interpolation.
std::vector<double> upsample(const std::vector<double>& h, int g) {
  int g2 = 2 * g;
  std::vector<double> out(static_cast<std::size_t>(g2) * g2);
  for (int j = 0; j < g; ++j) {
    int jn = (j + 1 == g) ? 0 : j + 1;
    for (int i = 0; i < g; ++i) {
      int in = (i + 1 == g) ? 0 : i + 1;
      double h00 = h[static_cast<std::size_t>(j) * g + i];
      double h10 = h[static_cast<std::size_t>(j) * g + in];
      double h01 = h[static_cast<std::size_t>(jn) * g + i];
      double h11 = h[static_cast<std::size_t>(jn) * g + in];
      std::size_t base = static_cast<std::size_t>(2 * j) * g2 + 2 * i;
      out[base] = h00;
      out[base + 1] = 0.5 * (h00 + h10);
      out[base + g2] = 0.5 * (h00 + h01);
      out[base + g2 + 1] = 0.25 * (h00 + h10 + h01 + h11);
    }
  }
  return out;
}

}  // namespace

GraphTransformResult graph_transform_ladder(const SystemSpec& s, double delta,
                                            int log2_min, int log2_max) {
  if (log2_min < 3 || log2_max < log2_min || log2_max > 14) {
    throw ConfigError("graph_transform_ladder: grid ladder out of range");
  }

  GraphTransformResult res;
  std::vector<double> h(static_cast<std::size_t>(1) << (2 * log2_min), 0.0);

  for (int lvl = log2_min; lvl <= log2_max; ++lvl) {
    const int g = 1 << lvl;
    const std::int64_t m11 = s.anosov.m11, m12 = s.anosov.m12;
    const std::int64_t m21 = s.anosov.m21, m22 = s.anosov.m22;

    // sin(2pi (x'+y')) only depends on (i'+j') mod g; table it.
    std::vector<double> ptab(g);
    for (int k = 0; k < g; ++k) {
      ptab[k] = std::sin(2.0 * M_PI * static_cast<double>(k) / g);
    }
    // A^{-1} = [[m22, -m12], [-m21, m11]] maps lattice points to lattice
    // points, so the pullback index is exact integer arithmetic.
    std::vector<double> next(h.size());
    int iters = 0;
    double change = 0.0, prev_change = 0.0;
    int non_decreasing = 0;
    for (; iters < kMaxIters; ++iters) {
      change = 0.0;
      for (std::int64_t j = 0; j < g; ++j) {
        for (std::int64_t i = 0; i < g; ++i) {
          std::int64_t ip = imod(m22 * i - m12 * j, g);
          std::int64_t jp = imod(-m21 * i + m11 * j, g);
          double v = fiber_lift(s.fiber, h[static_cast<std::size_t>(jp) * g + ip]) +
                     delta * ptab[(ip + jp) % g];
          std::size_t idx = static_cast<std::size_t>(j) * g + i;
          change = std::max(change, std::fabs(v - h[idx]));
          next[idx] = v;
        }
      }
      h.swap(next);
      if (change < kTol) {
        ++iters;
        break;
      }
      if (iters > 0) {
        non_decreasing = (change >= prev_change) ? non_decreasing + 1 : 0;
        if (non_decreasing >= 25 && change > 1e-6) {
          throw NonConvergence("graph transform: sup-norm change stopped contracting at grid 2^" +
                               std::to_string(lvl));
        }
      }
      prev_change = change;
    }
    if (change >= kTol) {
      throw NonConvergence("graph transform: no convergence within iteration cap at grid 2^" +
                           std::to_string(lvl));
    }

    GraphLevelStat st;
    st.grid_log2 = lvl;
    st.iters = iters;
    st.final_change = change;
    st.sup_abs_h = max_abs(h);
    st.max_slope = max_grid_slope(h, g);
    res.levels.push_back(st);

    if (lvl < log2_max) h = upsample(h, g);
  }
  res.h = std::move(h);
  res.grid = 1 << log2_max;
  return res;
}

}  // namespace skewlab
