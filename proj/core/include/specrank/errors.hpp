#pragma once

#include <stdexcept>
#include <string>

namespace specrank {

// Problem the caller can fix: malformed input data, an out-of-range
// parameter, a violated precondition. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& message)
      : std::runtime_error(message) {}
};

// Environment failure while reading or writing files (unwritable path,
// rename failure). The CLI maps this to exit code 1.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace specrank
