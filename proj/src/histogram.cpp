#include "skewlab/histogram.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>

#include "skewlab/csv.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

EmpiricalMeasure3::EmpiricalMeasure3(int nx_, int ny_, int nz_)
    : nx(nx_), ny(ny_), nz(nz_) {
  if (nx <= 0 || ny <= 0 || nz <= 0) throw ConfigError("histogram: bin counts must be positive");
  w.assign(static_cast<std::size_t>(nx) * ny * nz, 0.0);
}

std::size_t EmpiricalMeasure3::bin_index(const Point3& p) const {
  auto cell = [](double v, int n) {
    int i = static_cast<int>(wrap_unit(v) * n);
    return i >= n ? n - 1 : i;  // wrap_unit can return a value rounding to 1
  };
  std::size_t ix = cell(p.x, nx), iy = cell(p.y, ny), iz = cell(p.z, nz);
  return (iz * ny + iy) * nx + ix;
}

Point3 EmpiricalMeasure3::bin_center(std::size_t idx) const {
  std::size_t ix = idx % nx;
  std::size_t iy = (idx / nx) % ny;
  std::size_t iz = idx / (static_cast<std::size_t>(nx) * ny);
  return {(ix + 0.5) / nx, (iy + 0.5) / ny, (iz + 0.5) / nz};
}

void EmpiricalMeasure3::deposit(const Point3& p, double weight) {
  w[bin_index(p)] += weight;
  total += weight;
}

void merge(EmpiricalMeasure3& into, const EmpiricalMeasure3& part) {
  if (into.nx != part.nx || into.ny != part.ny || into.nz != part.nz) {
    throw Error("histogram merge: shape mismatch");
  }
  for (std::size_t i = 0; i < into.w.size(); ++i) into.w[i] += part.w[i];
  into.total += part.total;
}

std::vector<double> fiber_marginal(const EmpiricalMeasure3& m) {
  std::vector<double> out(m.nz, 0.0);
  std::size_t plane = static_cast<std::size_t>(m.nx) * m.ny;
  for (int iz = 0; iz < m.nz; ++iz) {
    double acc = 0.0;
    for (std::size_t k = 0; k < plane; ++k) acc += m.w[iz * plane + k];
    out[iz] = acc / m.total;
  }
  return out;
}

std::vector<double> base_marginal(const EmpiricalMeasure3& m) {
  std::size_t plane = static_cast<std::size_t>(m.nx) * m.ny;
  std::vector<double> out(plane, 0.0);
  for (std::size_t i = 0; i < m.w.size(); ++i) out[i % plane] += m.w[i];
  for (double& v : out) v /= m.total;
  return out;
}

double mass_outside_interval(const EmpiricalMeasure3& m, double center, double radius) {
  std::vector<double> fm = fiber_marginal(m);
  double acc = 0.0;
  for (int iz = 0; iz < m.nz; ++iz) {
    double c = (iz + 0.5) / m.nz;
    if (std::fabs(lift_delta(c, center)) > radius) acc += fm[iz];
  }
  return acc;
}

double base_uniformity_tv(const EmpiricalMeasure3& m) {
  std::vector<double> bm = base_marginal(m);
  double u = 1.0 / static_cast<double>(bm.size());
  double acc = 0.0;
  for (double v : bm) acc += std::fabs(v - u);
  return 0.5 * acc;
}

namespace {

constexpr char kMagic[8] = {'S', 'K', 'L', 'H', 'I', 'S', 'T', '1'};

void put_u64(FILE* f, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  std::fwrite(b, 1, 8, f);
}

std::uint64_t get_u64(FILE* f) {
  unsigned char b[8];
  if (std::fread(b, 1, 8, f) != 8) throw Error("histogram load: truncated file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t to_bits(double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  return v;
}

double from_bits(std::uint64_t v) {
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

}  // namespace

void save_histogram(const EmpiricalMeasure3& m, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Error("histogram save: cannot open " + path);
  std::fwrite(kMagic, 1, 8, f);
  put_u64(f, static_cast<std::uint64_t>(m.nx));
  put_u64(f, static_cast<std::uint64_t>(m.ny));
  put_u64(f, static_cast<std::uint64_t>(m.nz));
  put_u64(f, static_cast<std::uint64_t>(m.burn_in));
  put_u64(f, to_bits(m.total));
  put_u64(f, static_cast<std::uint64_t>(m.source.size()));
  std::fwrite(m.source.data(), 1, m.source.size(), f);
  for (double v : m.w) put_u64(f, to_bits(v));
  std::fclose(f);
}

EmpiricalMeasure3 load_histogram(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw Error("histogram load: cannot open " + path);
  char magic[8];
  if (std::fread(magic, 1, 8, f) != 8 || std::memcmp(magic, kMagic, 8) != 0) {
    std::fclose(f);
    throw Error("histogram load: bad magic in " + path);
  }
  try {
    int nx = static_cast<int>(get_u64(f));
    int ny = static_cast<int>(get_u64(f));
    int nz = static_cast<int>(get_u64(f));
    EmpiricalMeasure3 m(nx, ny, nz);
    m.burn_in = static_cast<long>(get_u64(f));
    m.total = from_bits(get_u64(f));
    std::size_t slen = static_cast<std::size_t>(get_u64(f));
    m.source.resize(slen);
    if (slen > 0 && std::fread(m.source.data(), 1, slen, f) != slen) {
      throw Error("histogram load: truncated file");
    }
    for (double& v : m.w) v = from_bits(get_u64(f));
    std::fclose(f);
    return m;
  } catch (...) {
    std::fclose(f);
    throw;
  }
}

void write_fiber_marginal_csv(const EmpiricalMeasure3& m, const std::string& path) {
  std::vector<double> fm = fiber_marginal(m);
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error("marginal csv: cannot open " + path);
  std::fprintf(f, "z_center,mass\n");
  for (int iz = 0; iz < m.nz; ++iz) {
    std::fprintf(f, "%s,%s\n", fmt_g17((iz + 0.5) / m.nz).c_str(), fmt_g17(fm[iz]).c_str());
  }
  std::fclose(f);
}

}  // namespace skewlab
