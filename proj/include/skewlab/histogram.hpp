#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "skewlab/torus.hpp"

namespace skewlab {

// Binned empirical measure on the 3-torus. Weights are doubles so that
// curve-mass deposits work; orbit counts use weight 1 and stay exact.
struct EmpiricalMeasure3 {
  int nx = 0, ny = 0, nz = 0;
  std::vector<double> w;  // nx*ny*nz, x fastest
  double total = 0.0;
  long burn_in = 0;
  std::string source;  // "orbit-cloud" or "curve-pushforward"

  EmpiricalMeasure3() = default;
  EmpiricalMeasure3(int nx_, int ny_, int nz_);

  std::size_t bin_index(const Point3& p) const;
  Point3 bin_center(std::size_t idx) const;
  void deposit(const Point3& p, double weight = 1.0);
};

// Bin-wise sum; shapes must match.
void merge(EmpiricalMeasure3& into, const EmpiricalMeasure3& part);

std::vector<double> fiber_marginal(const EmpiricalMeasure3& m);  // nz bins, sums to 1
std::vector<double> base_marginal(const EmpiricalMeasure3& m);   // nx*ny bins, sums to 1

// Mass of the fiber marginal outside the circle interval of radius `radius`
// around `center`, attributing each bin by its center.
double mass_outside_interval(const EmpiricalMeasure3& m, double center, double radius);

// Total-variation distance of the base marginal from uniform on nx*ny cells.
double base_uniformity_tv(const EmpiricalMeasure3& m);

void save_histogram(const EmpiricalMeasure3& m, const std::string& path);
EmpiricalMeasure3 load_histogram(const std::string& path);

void write_fiber_marginal_csv(const EmpiricalMeasure3& m, const std::string& path);

}  // namespace skewlab
