#pragma once

#include <stdexcept>
#include <string>

namespace tl {

// Raised when inputs violate an operation's mathematical preconditions.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a NewformSpec lacks the Hecke data needed for a request.
struct InsufficientData : DomainError {
  using DomainError::DomainError;
};

// Raised when a bound is evaluated outside the range where it is valid.
struct PreconditionError : DomainError {
  using DomainError::DomainError;
};

}  // namespace tl
