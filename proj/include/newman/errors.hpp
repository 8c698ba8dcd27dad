#pragma once

#include <stdexcept>
#include <string>

namespace newman {

// Broken precondition on the caller's side (mismatched moduli, bad index, ...).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

struct UndefinedResultant : std::domain_error {
  using std::domain_error::domain_error;
};

// A configured size or degree cap was exceeded.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

// Iterative numerics that did not converge or produced inconsistent output.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameter outside the range an operation is defined on.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

struct NoCandidateN : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckpointMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace newman
