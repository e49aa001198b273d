#pragma once

#include <stdexcept>

namespace gibbsfrag {

// Malformed or inconsistent arguments (mismatched n, x == y, unknown family).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exhaustive enumeration requested above its configured cap.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

// A mathematical precondition does not hold (nonpositive weights, empty support).
struct PreconditionError : std::domain_error {
  using std::domain_error::domain_error;
};

// Floating-point evaluation failed (quadrature did not converge).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gibbsfrag
