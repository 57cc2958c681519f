#pragma once

#include <stdexcept>
#include <string>

namespace sqcat {

/// Two objects that must share a mode layout (or a subset of it) do not.
class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Truncation leakage exceeded the threshold a caller asked for.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A heralding event that cannot occur (probability exactly zero).
class ImpossibleOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sqcat
