#include "skewlab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "skewlab/errors.hpp"

namespace skewlab {

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based; walk the text to a line:column pair.
    std::size_t stop = e.byte > 0 ? e.byte - 1 : 0;
    if (stop > text.size()) stop = text.size();
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": " + e.what());
  }
}

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
  }
}

Json system_to_json(const SystemSpec& s) {
  Json j;
  j["anosov"] = {{"matrix", {{s.anosov.m11, s.anosov.m12}, {s.anosov.m21, s.anosov.m22}}}};
  switch (s.fiber.family) {
    case FiberFamily::Sine:
      j["fiber"] = {{"family", "sine"}, {"kappa", s.fiber.par}};
      break;
    case FiberFamily::Projective:
      j["fiber"] = {{"family", "projective"}, {"lambda", s.fiber.par}};
      break;
  }
  switch (s.rotation.variant) {
    case RotationVariant::None:
      j["rotation"] = {{"variant", "none"}};
      break;
    case RotationVariant::Linear:
      j["rotation"] = {{"variant", "linear"}};
      break;
    case RotationVariant::Smooth:
      j["rotation"] = {{"variant", "smooth"}, {"s", s.rotation.s}};
      break;
    case RotationVariant::Rare:
      j["rotation"] = {{"variant", "rare"}, {"epsilon", s.rotation.eps}, {"x0", s.rotation.x0}};
      break;
  }
  j["delta"] = s.delta;
  return j;
}

namespace {

double num_at(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
  if (!j[key].is_number()) throw ConfigError(where + ": \"" + key + "\" must be a number");
  return j[key].get<double>();
}

}  // namespace

SystemSpec system_from_json(const Json& j) {
  require_keys(j, {"anosov", "fiber", "rotation", "delta"}, "system");
  SystemSpec s;

  if (!j.contains("anosov")) throw ConfigError("system: missing \"anosov\"");
  const Json& ja = j["anosov"];
  require_keys(ja, {"n", "matrix"}, "system.anosov");
  if (ja.contains("n") == ja.contains("matrix")) {
    throw ConfigError("system.anosov: give exactly one of \"n\" or \"matrix\"");
  }
  if (ja.contains("n")) {
    if (!ja["n"].is_number_integer()) throw ConfigError("system.anosov: \"n\" must be an integer");
    s.anosov = anosov_family(ja["n"].get<int>());
  } else {
    const Json& m = ja["matrix"];
    bool shape_ok = m.is_array() && m.size() == 2 && m[0].is_array() && m[1].is_array() &&
                    m[0].size() == 2 && m[1].size() == 2;
    if (!shape_ok) throw ConfigError("system.anosov: \"matrix\" must be 2x2");
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        if (!m[r][c].is_number_integer()) {
          throw ConfigError("system.anosov: matrix entries must be integers");
        }
      }
    }
    s.anosov = {m[0][0].get<int>(), m[0][1].get<int>(), m[1][0].get<int>(), m[1][1].get<int>()};
  }

  if (!j.contains("fiber")) throw ConfigError("system: missing \"fiber\"");
  const Json& jf = j["fiber"];
  require_keys(jf, {"family", "kappa", "lambda"}, "system.fiber");
  std::string family = jf.value("family", "");
  if (family == "sine") {
    s.fiber = sine_fiber(num_at(jf, "kappa", "system.fiber"));
  } else if (family == "projective") {
    s.fiber = projective_fiber(num_at(jf, "lambda", "system.fiber"));
  } else {
    throw ConfigError("system.fiber: \"family\" must be \"sine\" or \"projective\"");
  }

  if (!j.contains("rotation")) throw ConfigError("system: missing \"rotation\"");
  const Json& jr = j["rotation"];
  require_keys(jr, {"variant", "s", "epsilon", "x0"}, "system.rotation");
  std::string variant = jr.value("variant", "");
  if (variant == "none") {
    s.rotation = no_rotation();
  } else if (variant == "linear") {
    s.rotation = linear_rotation();
  } else if (variant == "smooth") {
    s.rotation = smooth_rotation(num_at(jr, "s", "system.rotation"));
  } else if (variant == "rare") {
    s.rotation = rare_rotation(num_at(jr, "epsilon", "system.rotation"),
                               num_at(jr, "x0", "system.rotation"));
  } else {
    throw ConfigError("system.rotation: \"variant\" must be none|linear|smooth|rare");
  }

  s.delta = j.contains("delta") ? num_at(j, "delta", "system") : 0.0;
  if (s.delta < 0.0) throw ConfigError("system: \"delta\" must be >= 0");
  validate(s);
  return s;
}

namespace {

Json clause_to_json(const ClauseReport& c) {
  return {{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}};
}

Json witness_to_json(const B3Witness& w) {
  return {{"i_plus_radius", w.i_plus_radius},
          {"i_minus_radius", w.i_minus_radius},
          {"d", w.d},
          {"d_lo", w.d_lo},
          {"d_hi", w.d_hi},
          {"c1_inv", w.c1_inv},
          {"c0", w.c0},
          {"cap_c0", w.cap_c0},
          {"disjoint_gap", w.disjoint_gap},
          {"steep_margin", w.steep_margin},
          {"margin", w.margin}};
}

}  // namespace

Json report_to_json(const AssumptionsReportA& r) {
  return {{"clauses", {clause_to_json(r.a1), clause_to_json(r.a2), clause_to_json(r.a3)}},
          {"pass", r.all_pass()},
          {"alpha_s", r.alpha_s},
          {"lam_min", r.lam_min},
          {"lam_max", r.lam_max},
          {"alpha_u", r.alpha_u},
          {"c_lo", r.c_lo},
          {"c_hi", r.c_hi},
          {"beta", r.beta}};
}

Json report_to_json(const AssumptionsReportB& r) {
  Json j = {{"clauses", {clause_to_json(r.b1), clause_to_json(r.b2), clause_to_json(r.b3)}},
            {"pass", r.all_pass()},
            {"lam_max", r.lam_max},
            {"base_norm", r.base_norm}};
  if (r.witness) j["witness"] = witness_to_json(*r.witness);
  Json cands = Json::array();
  for (const auto& w : r.candidates) cands.push_back(witness_to_json(w));
  j["candidates"] = cands;
  return j;
}

Json report_to_json(const ConeCheck& c) {
  return {{"violations", c.violations},
          {"sigma_observed", c.sigma_observed},
          {"min_image_slope", c.min_image_slope}};
}

Json report_to_json(const LyapunovEstimate& e) {
  return {{"exponents", {e.exponents[0], e.exponents[1], e.exponents[2]}},
          {"stderrs", {e.stderrs[0], e.stderrs[1], e.stderrs[2]}},
          {"n", e.n}};
}

Json report_to_json(const CCSufficient& c) {
  return {{"value", c.value},       {"bracket", c.bracket},
          {"int_plus", c.int_plus}, {"int_minus", c.int_minus},
          {"i_plus_lo", c.i_plus_lo}, {"i_plus_hi", c.i_plus_hi},
          {"k_a", c.k_a}};
}

Json report_to_json(const OrbitCount& c) {
  return {{"count", c.count}, {"period", c.period}, {"exact", c.exact}};
}

Json report_to_json(const GraphLevelStat& s) {
  return {{"grid_log2", s.grid_log2},
          {"iters", s.iters},
          {"final_change", s.final_change},
          {"sup_abs_h", s.sup_abs_h},
          {"max_slope", s.max_slope}};
}

Json report_to_json(const SecantScaleResult& r) {
  return {{"scale", r.scale},
          {"min_angle_deg", r.min_angle_deg},
          {"a", {r.p_a.x, r.p_a.y, r.p_a.z}},
          {"b", {r.p_b.x, r.p_b.y, r.p_b.z}},
          {"pairs_tested", r.pairs_tested}};
}

Json report_to_json(const BirkhoffStat& b) {
  return {{"mean", b.mean}, {"se", b.se}, {"n", b.n}};
}

}  // namespace skewlab
