#pragma once

#include <stdexcept>
#include <string>

namespace sgdg {

// Base of every error raised by the library. The CLI maps ConfigError and
// MeshError to exit code 2 and the numerical ones to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class AdmissibilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InterlacingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class VacuumError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LimiterError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sgdg
