#pragma once

#include <stdexcept>
#include <string>

namespace polydyn {

// Raised for inputs outside an operation's domain. The CLI maps it to exit code 1.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation needed more truncated series data than was computed.
struct TruncationError : DomainError {
  using DomainError::DomainError;
};

}  // namespace polydyn
