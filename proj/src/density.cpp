#include "skewlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

// log Ju at the points F^-1(p), ..., F^-depth(p). The E^u slope along the
// backward orbit is obtained by seeding zero at depth + extra and pushing
// forward; the seeding error contracts like (g'/alpha_u)^extra.
std::vector<double> backward_log_ju(const SystemSpec& s, const EigenData& eig,
                                    const Point3& p, int depth, int extra) {
  std::vector<Point3> back(static_cast<std::size_t>(depth + extra));
  Point3 q = p;
  for (auto& b : back) {
    q = coupled_inverse(s, q);
    b = q;
  }
  std::vector<double> gp(back.size()), cc(back.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    double zs = wrap_unit(back[i].z + rotation_eval(s.rotation, back[i].x));
    gp[i] = fiber_deriv(s.fiber, zs);
    cc[i] = gp[i] * rotation_deriv(s.rotation, back[i].x) * eig.beta;
  }
  // slope[i] = E^u slope at back[i]. DF at back[i+1] maps the tangent there
  // to the tangent at back[i], so the recursion reads the derivative data of
  // the deeper point, not the one being filled.
  std::vector<double> slope(back.size(), 0.0);
  for (std::size_t i = back.size() - 1; i-- > 0;) {
    slope[i] = (cc[i + 1] + gp[i + 1] * slope[i + 1]) / eig.alpha_u;
  }
  std::vector<double> out(static_cast<std::size_t>(depth));
  for (int j = 0; j < depth; ++j) {
    double sl = slope[static_cast<std::size_t>(j)];
    double img = std::hypot(eig.alpha_u, cc[static_cast<std::size_t>(j)] +
                                             gp[static_cast<std::size_t>(j)] * sl);
    out[static_cast<std::size_t>(j)] = std::log(img / std::hypot(1.0, sl));
  }
  return out;
}

}  // namespace

DensityProfile rho_density(const SystemSpec& s, const UnstableCurve& curve,
                           int n_trunc, double tol, int n_extra) {
  if (s.delta != 0.0) throw Error("rho_density: delta = 0 only");
  const auto& nodes = curve.nodes;
  if (nodes.size() < 2) throw Error("rho_density: need at least two nodes");
  EigenData eig = eigendata(s.anosov);

  std::size_t ref = nodes.size() / 2;
  std::vector<double> ref_ju =
      backward_log_ju(s, eig, nodes[ref].p, n_trunc, n_extra);

  std::vector<double> logrho(nodes.size(), 0.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i == ref) continue;
    std::vector<double> ju = backward_log_ju(s, eig, nodes[i].p, n_trunc, n_extra);
    // The terms decay like alpha_u^-j while round-off in the backward orbits
    // grows like alpha_u^+j, so |term| has a floor at the crossover and the
    // sum must stop there. The floor search works on pairwise maxima, since
    // a single term can pass through zero mid-decay and must not be mistaken
    // for the floor; once the maxima have grown well past the smallest one
    // seen, the crossover is behind us.
    std::vector<double> term(static_cast<std::size_t>(n_trunc));
    for (int j = 0; j < n_trunc; ++j) {
      term[static_cast<std::size_t>(j)] =
          ref_ju[static_cast<std::size_t>(j)] - ju[static_cast<std::size_t>(j)];
    }
    int jstop = n_trunc - 1;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j + 1 < n_trunc; ++j) {
      double m = std::max(std::abs(term[static_cast<std::size_t>(j)]),
                          std::abs(term[static_cast<std::size_t>(j) + 1]));
      if (m < best) {
        best = m;
        jstop = j + 1;
      }
      if (m < tol || m > 8.0 * best) break;
    }
    double acc = 0.0;
    for (int j = 0; j <= jstop; ++j) acc += term[static_cast<std::size_t>(j)];
    logrho[i] = acc;
  }

  double peak = *std::max_element(logrho.begin(), logrho.end());
  DensityProfile prof;
  prof.rho.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) prof.rho[i] = std::exp(logrho[i] - peak);
  double z = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    z += 0.5 * (prof.rho[i] + prof.rho[i - 1]) * (nodes[i].param - nodes[i - 1].param);
  }
  if (z <= 0.0) throw Error("rho_density: degenerate normalization");
  for (double& v : prof.rho) v /= z;
  prof.normalization = z;
  return prof;
}

double distortion_bound(const UnstableCurve& curve, const DensityProfile& profile,
                        double ell) {
  const auto& nodes = curve.nodes;
  const auto& rho = profile.rho;
  double k = 1.0;
  std::deque<std::size_t> maxq, minq;
  std::size_t j = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    while (j < nodes.size() && nodes[j].param <= nodes[i].param + ell) {
      while (!maxq.empty() && rho[maxq.back()] <= rho[j]) maxq.pop_back();
      maxq.push_back(j);
      while (!minq.empty() && rho[minq.back()] >= rho[j]) minq.pop_back();
      minq.push_back(j);
      ++j;
    }
    while (!maxq.empty() && maxq.front() < i) maxq.pop_front();
    while (!minq.empty() && minq.front() < i) minq.pop_front();
    if (!maxq.empty() && !minq.empty() && rho[minq.front()] > 0.0) {
      k = std::max(k, rho[maxq.front()] / rho[minq.front()]);
    }
  }
  return k;
}

double curve_integral(const UnstableCurve& curve, const DensityProfile& profile,
                      const std::function<double(const Point3&)>& f) {
  const auto& nodes = curve.nodes;
  double acc = 0.0;
  double prev = f(nodes[0].p) * profile.rho[0];
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    double cur = f(nodes[i].p) * profile.rho[i];
    acc += 0.5 * (prev + cur) * (nodes[i].param - nodes[i - 1].param);
    prev = cur;
  }
  return acc;
}

}  // namespace skewlab
