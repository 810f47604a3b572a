#pragma once

#include <stdexcept>
#include <string>

namespace eigenshrink {

// Failure of an iterative or floating-point computation (non-convergence,
// loss of positive definiteness beyond tolerance, capacity overrun).
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// A closed-form evaluation was requested for a loss that has none.
class unsupported_method_error : public std::invalid_argument {
 public:
  explicit unsupported_method_error(const std::string& what)
      : std::invalid_argument(what) {}
};

// Asymptotic shift requested for a shrinker whose asymptotic slope is not 1.
class shift_undefined_error : public std::invalid_argument {
 public:
  explicit shift_undefined_error(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace eigenshrink
