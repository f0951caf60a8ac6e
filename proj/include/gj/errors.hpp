#pragma once

#include <stdexcept>
#include <string>

namespace gj {

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

// Raised when a decimal cannot be snapped to a rational within the
// denominator bound.
struct RationalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gj
