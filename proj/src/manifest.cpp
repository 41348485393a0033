#include "skewlab/manifest.hpp"

#include <filesystem>
#include <fstream>

#include "skewlab/errors.hpp"
#include "skewlab/sha256.hpp"

#ifndef SKEWLAB_GIT_REV
#define SKEWLAB_GIT_REV "unknown"
#endif

namespace skewlab {

void ensure_dir(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error("cannot create directory " + path + ": " + ec.message());
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const ExperimentConfig& cfg, double wall_seconds,
                    const std::vector<std::string>& output_files) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["experiment"] = cfg.experiment;
  j["code_version"] = SKEWLAB_GIT_REV;
  Json cfg_json = config_to_json(cfg);
  j["config"] = cfg_json;
  j["config_sha256"] = sha256_hex(cfg_json.dump());
  j["wall_seconds"] = wall_seconds;
  Json outs = Json::array();
  for (const std::string& name : output_files) {
    std::string full = out_dir + "/" + name;
    Json o;
    o["path"] = name;
    o["sha256"] = sha256_file_hex(full);
    o["bytes"] = static_cast<long>(std::filesystem::file_size(full));
    outs.push_back(o);
  }
  j["outputs"] = outs;

  std::ofstream out(out_dir + "/manifest.json");
  if (!out) throw Error("cannot write manifest in " + out_dir);
  out << j.dump(2) << "\n";
}

}  // namespace skewlab
