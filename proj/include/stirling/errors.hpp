#pragma once

#include <stdexcept>
#include <string>

namespace stirling {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix expected to be Hermitian failed the symmetry check.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Hot bath colder than the cold bath, or a non-positive temperature.
class InvalidTemperatures : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The integrator produced a non-positive state; the step size is too large.
class StepError : public Error {
 public:
  using Error::Error;
};

}  // namespace stirling
