#include "skewlab/observables.hpp"

#include <cmath>

#include "skewlab/errors.hpp"

namespace skewlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Observable builtin_observable(const std::string& name) {
  auto mk = [&](std::function<double(const Point3&)> f) { return Observable{name, std::move(f)}; };
  if (name == "one") return mk([](const Point3&) { return 1.0; });
  if (name == "cos_x") return mk([](const Point3& p) { return std::cos(kTwoPi * p.x); });
  if (name == "cos_y") return mk([](const Point3& p) { return std::cos(kTwoPi * p.y); });
  if (name == "cos_z") return mk([](const Point3& p) { return std::cos(kTwoPi * p.z); });
  if (name == "sin_x") return mk([](const Point3& p) { return std::sin(kTwoPi * p.x); });
  if (name == "sin_y") return mk([](const Point3& p) { return std::sin(kTwoPi * p.y); });
  if (name == "sin_z") return mk([](const Point3& p) { return std::sin(kTwoPi * p.z); });
  if (name == "sin_xy") {
    return mk([](const Point3& p) { return std::sin(kTwoPi * (p.x + p.y)); });
  }
  if (name == "sin_xyz") {
    return mk([](const Point3& p) { return std::sin(kTwoPi * (p.x + p.y + p.z)); });
  }
  if (name == "cos_xz") {
    return mk([](const Point3& p) { return std::cos(kTwoPi * p.x) * std::cos(kTwoPi * p.z); });
  }
  const std::string prefix = "indicator_iminus:";
  if (name.rfind(prefix, 0) == 0) {
    std::size_t pos = 0;
    double radius;
    try {
      radius = std::stod(name.substr(prefix.size()), &pos);
    } catch (const std::exception&) {
      throw ConfigError("observable " + name + ": bad radius");
    }
    if (pos != name.size() - prefix.size() || !(radius > 0.0) || radius > 0.5) {
      throw ConfigError("observable " + name + ": radius must be in (0, 0.5]");
    }
    return mk([radius](const Point3& p) {
      return std::fabs(lift_delta(p.z, 0.0)) <= radius ? 1.0 : 0.0;
    });
  }
  throw ConfigError("unknown observable: " + name);
}

std::vector<std::string> builtin_observable_names() {
  return {"one",   "cos_x",  "cos_y",   "cos_z",  "sin_x",
          "sin_y", "sin_z",  "sin_xy",  "sin_xyz", "cos_xz",
          "indicator_iminus:R"};
}

}  // namespace skewlab
