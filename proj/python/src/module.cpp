#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skewlab/anosov.hpp"
#include "skewlab/assumptions.hpp"
#include "skewlab/cone.hpp"
#include "skewlab/domains.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/fiber.hpp"
#include "skewlab/json_io.hpp"
#include "skewlab/lyapunov.hpp"
#include "skewlab/rotation.hpp"
#include "skewlab/system.hpp"

namespace py = pybind11;

namespace skewlab {
namespace {

SystemSpec spec_from_json(const std::string& text) {
  return system_from_json(Json::parse(text));
}

py::tuple point_tuple(const Point3& p) { return py::make_tuple(p.x, p.y, p.z); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "coupled Anosov / circle-map skew products: core operations";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<AssumptionError>(m, "AssumptionError");
  py::register_exception<NonConvergence>(m, "NonConvergence");

  py::class_<SystemSpec>(m, "SystemSpec")
      .def_static("from_json", &spec_from_json, py::arg("text"),
                  "build and validate a system from its json description")
      .def("to_json", [](const SystemSpec& s) { return system_to_json(s).dump(); })
      .def_property_readonly("delta", [](const SystemSpec& s) { return s.delta; })
      .def("__repr__", [](const SystemSpec& s) {
        return "SystemSpec(" + system_to_json(s).dump() + ")";
      });

  m.def("apply", [](const SystemSpec& s, double x, double y, double z) {
    return point_tuple(coupled_apply(s, {x, y, z}));
  });
  m.def("inverse_apply", [](const SystemSpec& s, double x, double y, double z) {
    return point_tuple(coupled_inverse(s, {x, y, z}));
  });
  m.def("jacobian", [](const SystemSpec& s, double x, double y, double z) {
    Jacobian3 j = coupled_jacobian(s, {x, y, z});
    py::list rows;
    for (int r = 0; r < 3; ++r) {
      py::list row;
      for (int c = 0; c < 3; ++c) row.append(j.m[r][c]);
      rows.append(row);
    }
    return rows;
  });
  m.def("min_jacobian_det",
        [](const SystemSpec& s, int n) { return min_jacobian_det(s, n); },
        py::arg("spec"), py::arg("n") = 13);

  m.def("eigen_data", [](const SystemSpec& s) {
    EigenData e = eigendata(s.anosov);
    py::dict d;
    d["alpha_u"] = e.alpha_u;
    d["alpha_s"] = e.alpha_s;
    d["beta"] = e.beta;
    d["du"] = py::make_tuple(e.du.x, e.du.y);
    d["ds"] = py::make_tuple(e.ds.x, e.ds.y);
    return d;
  });

  m.def("check_assumptions", [](const SystemSpec& s) {
    Json j;
    j["assumptions_a"] = report_to_json(check_assumptions_A(s));
    j["assumptions_b"] = report_to_json(check_assumptions_B(s));
    return j.dump();
  });

  m.def("cone_check",
        [](const SystemSpec& s, long n_samples, std::uint64_t seed) {
          ConeCheck c = verify_cone(s, n_samples, seed);
          py::dict d;
          d["violations"] = c.violations;
          d["sigma_observed"] = c.sigma_observed;
          d["min_image_slope"] = c.min_image_slope;
          return d;
        },
        py::arg("spec"), py::arg("n_samples") = 10000, py::arg("seed") = 1);

  m.def("lyapunov_spectrum",
        [](const SystemSpec& s, double x, double y, double z, long n, long burn_in) {
          LyapunovEstimate e = lyapunov_spectrum_qr(s, {x, y, z}, n, burn_in);
          py::dict d;
          d["exponents"] = py::make_tuple(e.exponents[0], e.exponents[1], e.exponents[2]);
          d["stderrs"] = py::make_tuple(e.stderrs[0], e.stderrs[1], e.stderrs[2]);
          d["n"] = e.n;
          return d;
        },
        py::arg("spec"), py::arg("x"), py::arg("y"), py::arg("z"), py::arg("n") = 100000,
        py::arg("burn_in") = 1000);
  m.def("central_exponent",
        [](const SystemSpec& s, double x, double y, double z, long n, long burn_in) {
          return central_exponent(s, {x, y, z}, n, burn_in);
        },
        py::arg("spec"), py::arg("x"), py::arg("y"), py::arg("z"), py::arg("n") = 100000,
        py::arg("burn_in") = 0);

  m.def("cc_sufficient", [](const SystemSpec& s) {
    CCSufficient c = cc_sufficient_lhs(s);
    py::dict d;
    d["value"] = c.value;
    d["bracket"] = c.bracket;
    d["int_plus"] = c.int_plus;
    d["int_minus"] = c.int_minus;
    d["i_plus"] = py::make_tuple(c.i_plus_lo, c.i_plus_hi);
    return d;
  });

  m.def("fiber_eval", [](const SystemSpec& s, double z) { return fiber_eval(s.fiber, z); });
  m.def("fiber_deriv", [](const SystemSpec& s, double z) { return fiber_deriv(s.fiber, z); });
  m.def("rotation_eval",
        [](const SystemSpec& s, double x) { return rotation_eval(s.rotation, x); });
}

}  // namespace skewlab
