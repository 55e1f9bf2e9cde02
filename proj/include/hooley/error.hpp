#pragma once

#include <stdexcept>
#include <string>

namespace hooley {

/// A computation would exceed a configured size limit (sieve length,
/// divisor count, tuple budget, floating-point range).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or a violated structural precondition.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A weight evaluated above its declared prime-power cap A^nu.
class ClassViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hooley
