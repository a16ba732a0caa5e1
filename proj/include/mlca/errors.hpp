#pragma once

#include <stdexcept>
#include <string>

namespace mlca {

// Bad parameters, malformed inputs or violated preconditions.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A read pulse large enough to disturb the device state.
class DestructiveReadError : public ValidationError {
public:
  explicit DestructiveReadError(const std::string& what) : ValidationError(what) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mlca
