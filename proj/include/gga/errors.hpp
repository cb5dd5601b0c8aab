#pragma once

#include <stdexcept>
#include <string>

namespace gga {

/// Invalid or inconsistent configuration (bad bounds, unknown keys, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Objective evaluation produced a non-finite value or failed outright.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an operation precondition (dimension mismatch, empty input).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gga
