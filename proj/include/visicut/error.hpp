#pragma once

#include <stdexcept>
#include <string>

namespace visicut {

/// Malformed or out-of-contract input (dimension mismatch, point outside the
/// domain, violated instance invariant).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine broke down (pivot blow-up, failed eigen solve).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace visicut
