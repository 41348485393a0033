#include "skewlab/birkhoff.hpp"

#include <cmath>

#include "skewlab/errors.hpp"

namespace skewlab {

BirkhoffStat birkhoff_average(const SystemSpec& s, Point3 p0, const Observable& obs,
                              long n, long burn_in) {
  if (n < 20) throw ConfigError("birkhoff_average: need n >= 20");
  Point3 p = p0;
  for (long i = 0; i < burn_in; ++i) p = coupled_apply(s, p);

  const int kBatches = 20;
  long per = n / kBatches;
  double batch_means[kBatches];
  double acc_all = 0.0;
  long used = 0;
  for (int b = 0; b < kBatches; ++b) {
    double acc = 0.0;
    for (long i = 0; i < per; ++i) {
      acc += obs.fn(p);
      p = coupled_apply(s, p);
    }
    batch_means[b] = acc / static_cast<double>(per);
    acc_all += acc;
    used += per;
  }
  BirkhoffStat st;
  st.n = used;
  st.mean = acc_all / static_cast<double>(used);
  double var = 0.0;
  for (int b = 0; b < kBatches; ++b) {
    double d = batch_means[b] - st.mean;
    var += d * d;
  }
  var /= static_cast<double>(kBatches - 1);
  st.se = std::sqrt(var / kBatches);
  return st;
}

EmpiricalMeasure3 orbit_measure(const SystemSpec& s, Point3 p0, long n, long burn_in,
                                int nx, int ny, int nz) {
  EmpiricalMeasure3 m(nx, ny, nz);
  m.burn_in = burn_in;
  m.source = "orbit-cloud";
  Point3 p = p0;
  for (long i = 0; i < burn_in; ++i) p = coupled_apply(s, p);
  for (long i = 0; i < n; ++i) {
    m.deposit(p, 1.0);
    p = coupled_apply(s, p);
  }
  return m;
}

CesaroResult cesaro_pushforward(const SystemSpec& s, const UnstableCurve& seed,
                                const DensityProfile& rho, long steps, long burn_in,
                                int nx, int ny, int nz,
                                const std::vector<Observable>& obs) {
  const auto& nodes = seed.nodes;
  if (nodes.size() != rho.rho.size() || nodes.size() < 2) {
    throw ConfigError("cesaro_pushforward: curve and density sizes disagree");
  }
  if (burn_in >= steps) throw ConfigError("cesaro_pushforward: burn_in must be < steps");

  std::vector<double> weight(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double left = (i == 0) ? nodes[0].param : nodes[i - 1].param;
    double right = (i + 1 == nodes.size()) ? nodes[i].param : nodes[i + 1].param;
    weight[i] = rho.rho[i] * 0.5 * (right - left);
  }

  CesaroResult out;
  out.measure = EmpiricalMeasure3(nx, ny, nz);
  out.measure.burn_in = burn_in;
  out.measure.source = "curve-pushforward";
  out.means_at_points.assign(obs.size(), 0.0);
  out.means_at_centers.assign(obs.size(), 0.0);

  std::vector<Point3> pts(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) pts[i] = nodes[i].p;

  for (long step = 0; step < steps; ++step) {
    if (step >= burn_in) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        std::size_t bin = out.measure.bin_index(pts[i]);
        out.measure.w[bin] += weight[i];
        out.measure.total += weight[i];
        Point3 c = out.measure.bin_center(bin);
        for (std::size_t k = 0; k < obs.size(); ++k) {
          out.means_at_points[k] += weight[i] * obs[k].fn(pts[i]);
          out.means_at_centers[k] += weight[i] * obs[k].fn(c);
        }
      }
    }
    if (step + 1 < steps) {
      for (Point3& p : pts) p = coupled_apply(s, p);
    }
  }
  for (std::size_t k = 0; k < obs.size(); ++k) {
    out.means_at_points[k] /= out.measure.total;
    out.means_at_centers[k] /= out.measure.total;
  }
  return out;
}

}  // namespace skewlab
