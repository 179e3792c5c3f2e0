#pragma once

#include <stdexcept>
#include <string>

namespace gcx {

// Raised when a caller hands an operation input outside its contract
// (dimension mismatch, wrong degree, point outside the chart domain, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an internal consistency assertion fails. Never expected for
// inputs that satisfy the preconditions.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

inline void ensure(bool condition, const std::string& message) {
  if (!condition) throw InternalError(message);
}

}  // namespace gcx
