#pragma once

#include <stdexcept>
#include <string>

namespace dormant {

/// Invalid inputs: threshold violations, non-prime p, r > n, caps exceeded.
/// Maps to CLI exit code 2.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ThresholdError : ParameterError {
  using ParameterError::ParameterError;
};

struct SizeError : ParameterError {
  using ParameterError::ParameterError;
};

/// The formula is not defined at these inputs (sign-invalid exponent,
/// irrational sum, zero divisor). Maps to exit code 3.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DivisionByZero : DomainError {
  DivisionByZero() : DomainError("division by zero") {}
  using DomainError::DomainError;
};

struct IrrationalError : DomainError {
  using DomainError::DomainError;
};

/// Certified rounding could not isolate a unique value. Exit code 4.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dormant
