#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative scheme failed to meet its tolerance within its cap.
struct NonConvergence : Error {
  using Error::Error;
};

// Malformed or out-of-range configuration input.
struct ConfigError : Error {
  using Error::Error;
};

// A standing hypothesis of the requested operation fails for this system.
struct AssumptionError : Error {
  using Error::Error;
};

// Curve refinement would exceed the caller's node budget.
struct NodeCapExceeded : Error {
  using Error::Error;
};

}  // namespace skewlab
