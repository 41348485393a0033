#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace skewlab {

// Minimal SHA-256, enough to fingerprint configs and output files in run
// manifests. Hex digest, lowercase.
std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(std::string_view s);
std::string sha256_file_hex(const std::string& path);  // throws Error on I/O failure

}  // namespace skewlab
