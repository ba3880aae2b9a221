#pragma once

#include <stdexcept>
#include <string>

namespace ttheat {

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BoundsError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Raised when a dense reconstruction would exceed the configured memory cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A coordinate map whose derivative is not strictly positive.
struct SingularMap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ttheat
