#pragma once

#include <cstdio>
#include <string>

namespace skewlab {

// Round-trip formatting for doubles so identical runs produce identical
// bytes regardless of locale or stream state.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace skewlab
