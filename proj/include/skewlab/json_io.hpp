#pragma once

#include <string>

#include "json.hpp"
#include "skewlab/assumptions.hpp"
#include "skewlab/birkhoff.hpp"
#include "skewlab/circle_diag.hpp"
#include "skewlab/cone.hpp"
#include "skewlab/domains.hpp"
#include "skewlab/graph_transform.hpp"
#include "skewlab/lyapunov.hpp"
#include "skewlab/secant_probe.hpp"
#include "skewlab/system.hpp"

namespace skewlab {

using Json = nlohmann::json;

// Parses a file, turning syntax errors into ConfigError with a
// "path:line:col" prefix.
Json parse_json_file(const std::string& path);

// Throws ConfigError when j holds a key outside `allowed`; `where` names the
// object in the message.
void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& where);

Json system_to_json(const SystemSpec& s);
SystemSpec system_from_json(const Json& j);

Json report_to_json(const AssumptionsReportA& r);
Json report_to_json(const AssumptionsReportB& r);
Json report_to_json(const ConeCheck& c);
Json report_to_json(const LyapunovEstimate& e);
Json report_to_json(const CCSufficient& c);
Json report_to_json(const OrbitCount& c);
Json report_to_json(const GraphLevelStat& s);
Json report_to_json(const SecantScaleResult& r);
Json report_to_json(const BirkhoffStat& b);

}  // namespace skewlab
