#pragma once

#include <stdexcept>
#include <string>

namespace poiname {

/// Raised for bad or missing input: unreadable files, malformed artifacts,
/// violated preconditions on caller-supplied data. The CLI maps it to exit 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation cannot produce a meaningful result
/// (degenerate statistics, divergent training). The CLI maps it to exit 1.
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace poiname
