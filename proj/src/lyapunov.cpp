#include "skewlab/lyapunov.hpp"

#include <algorithm>
#include <cmath>

#include "skewlab/curve.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

struct Triple {
  Vec3 c0, c1, c2;
};

// Modified Gram-Schmidt; returns the log norms of the diagonal factors.
std::array<double, 3> orthonormalize(Triple& t) {
  std::array<double, 3> logr{};
  double r0 = norm(t.c0);
  t.c0 = {t.c0.x / r0, t.c0.y / r0, t.c0.z / r0};
  double p01 = dot(t.c0, t.c1);
  t.c1 = {t.c1.x - p01 * t.c0.x, t.c1.y - p01 * t.c0.y, t.c1.z - p01 * t.c0.z};
  double r1 = norm(t.c1);
  t.c1 = {t.c1.x / r1, t.c1.y / r1, t.c1.z / r1};
  double p02 = dot(t.c0, t.c2);
  t.c2 = {t.c2.x - p02 * t.c0.x, t.c2.y - p02 * t.c0.y, t.c2.z - p02 * t.c0.z};
  double p12 = dot(t.c1, t.c2);
  t.c2 = {t.c2.x - p12 * t.c1.x, t.c2.y - p12 * t.c1.y, t.c2.z - p12 * t.c1.z};
  double r2 = norm(t.c2);
  t.c2 = {t.c2.x / r2, t.c2.y / r2, t.c2.z / r2};
  logr = {std::log(r0), std::log(r1), std::log(r2)};
  return logr;
}

}  // namespace

LyapunovEstimate lyapunov_spectrum_qr(const SystemSpec& s, const Point3& p0,
                                      long n, long n_transient) {
  Point3 p = wrap(p0);
  Triple t{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (long i = 0; i < n_transient; ++i) {
    Jacobian3 j = coupled_jacobian(s, p);
    t = {apply(j, t.c0), apply(j, t.c1), apply(j, t.c2)};
    orthonormalize(t);
    p = coupled_apply(s, p);
  }

  constexpr int kBatches = 20;
  long batch_len = std::max<long>(n / kBatches, 1);
  long used = batch_len * kBatches;
  std::array<std::array<double, kBatches>, 3> batch{};
  for (int b = 0; b < kBatches; ++b) {
    std::array<double, 3> acc{};
    for (long i = 0; i < batch_len; ++i) {
      Jacobian3 j = coupled_jacobian(s, p);
      t = {apply(j, t.c0), apply(j, t.c1), apply(j, t.c2)};
      auto logr = orthonormalize(t);
      for (int k = 0; k < 3; ++k) acc[k] += logr[k];
      p = coupled_apply(s, p);
    }
    for (int k = 0; k < 3; ++k) batch[k][b] = acc[k] / batch_len;
  }

  std::array<std::pair<double, double>, 3> est;  // (exponent, stderr)
  for (int k = 0; k < 3; ++k) {
    double mean = 0.0;
    for (double v : batch[k]) mean += v;
    mean /= kBatches;
    double var = 0.0;
    for (double v : batch[k]) var += (v - mean) * (v - mean);
    var /= (kBatches - 1);
    est[k] = {mean, std::sqrt(var / kBatches)};
  }
  std::sort(est.begin(), est.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  LyapunovEstimate out;
  out.n = used;
  for (int k = 0; k < 3; ++k) {
    out.exponents[k] = est[k].first;
    out.stderrs[k] = est[k].second;
  }
  return out;
}

double central_exponent(const SystemSpec& s, const Point3& p0, long n,
                        long n_transient) {
  if (s.delta != 0.0) {
    throw Error("central_exponent: the fiber line is invariant only for delta = 0");
  }
  Point3 p = wrap(p0);
  for (long i = 0; i < n_transient; ++i) p = coupled_apply(s, p);
  double sum = 0.0;
  for (long i = 0; i < n; ++i) {
    double zs = wrap_unit(p.z + rotation_eval(s.rotation, p.x));
    sum += std::log(fiber_deriv(s.fiber, zs));
    p = coupled_apply(s, p);
  }
  return sum / static_cast<double>(n);
}

std::vector<double> finite_time_central_profile(const SystemSpec& s,
                                                const UnstableCurve& curve, int n) {
  if (s.delta != 0.0) {
    throw Error("finite_time_central_profile: needs delta = 0");
  }
  std::vector<double> out;
  out.reserve(curve.nodes.size());
  for (const CurveNode& node : curve.nodes) {
    Point3 p = node.p;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      double zs = wrap_unit(p.z + rotation_eval(s.rotation, p.x));
      sum += std::log(fiber_deriv(s.fiber, zs));
      p = coupled_apply(s, p);
    }
    out.push_back(sum / n);
  }
  return out;
}

}  // namespace skewlab
