#pragma once

#include <stdexcept>
#include <string>

namespace borelrig {

/// Malformed or inconsistent input (bad document, mismatched dimensions,
/// unknown generator, rank-deficient flag).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a numerical kernel (non-finite value,
/// singular matrix where an invertible one is required).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coincident points where distinct ones are required.
class DegenerateConfiguration : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The computation was refused because a precondition checked at run time
/// failed: non-equivariant boundary map, uncertified slice.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical stage failed to reach its tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace borelrig
