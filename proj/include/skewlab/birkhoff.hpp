#pragma once

#include <vector>

#include "skewlab/curve.hpp"
#include "skewlab/density.hpp"
#include "skewlab/histogram.hpp"
#include "skewlab/observables.hpp"
#include "skewlab/system.hpp"

namespace skewlab {

struct BirkhoffStat {
  double mean = 0.0;
  double se = 0.0;  // standard error over 20 consecutive batches
  long n = 0;
};

BirkhoffStat birkhoff_average(const SystemSpec& s, Point3 p0, const Observable& obs,
                              long n, long burn_in);

// Orbit-cloud empirical measure of a single trajectory.
EmpiricalMeasure3 orbit_measure(const SystemSpec& s, Point3 p0, long n, long burn_in,
                                int nx, int ny, int nz);

// Cesaro average of the pushforwards of the curve measure rho ds: every node
// carries its trapezoid mass and is iterated forward, depositing after
// burn_in. means_at_points evaluates observables at the orbit points,
// means_at_centers at the center of the bin each deposit lands in; the latter
// must match the same contraction computed from the finished histogram.
struct CesaroResult {
  EmpiricalMeasure3 measure;
  std::vector<double> means_at_points;
  std::vector<double> means_at_centers;
};

CesaroResult cesaro_pushforward(const SystemSpec& s, const UnstableCurve& seed,
                                const DensityProfile& rho, long steps, long burn_in,
                                int nx, int ny, int nz,
                                const std::vector<Observable>& obs);

}  // namespace skewlab
