#pragma once

#include <string>
#include <vector>

#include "skewlab/config.hpp"

namespace skewlab {

// Writes out_dir/manifest.json listing the resolved config (with its hash),
// the code version, wall time, and a content hash for every output file.
void write_manifest(const std::string& out_dir, const std::string& command,
                    const ExperimentConfig& cfg, double wall_seconds,
                    const std::vector<std::string>& output_files);

// Creates the directory (and parents) if needed; throws Error on failure.
void ensure_dir(const std::string& path);

}  // namespace skewlab
