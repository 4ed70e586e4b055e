#ifndef SQGLC_ERRORS_HPP_
#define SQGLC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sqglc {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input/contract violations (CLI maps these to exit code 1).
class ValidationError : public Error {
public:
  using Error::Error;
};

class ParseError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NonZeroMeanError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ComponentMismatchError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class GridMismatchError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class MissingEpsilonError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InvalidAError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class UnsupportedBetaError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class UnsupportedParametersError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InsufficientResolutionError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Numerical aborts (CLI maps these to exit code 2).
class NumericalError : public Error {
public:
  using Error::Error;
};

class StepRejectedError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class CflViolationError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DegeneratePointError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class QuadratureFailureError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class StalledBelowThresholdError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// Snapshot file errors.
class SnapshotError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class BadMagicError : public SnapshotError {
public:
  using SnapshotError::SnapshotError;
};

class VersionMismatchError : public SnapshotError {
public:
  using SnapshotError::SnapshotError;
};

class ChecksumMismatchError : public SnapshotError {
public:
  using SnapshotError::SnapshotError;
};

class TruncatedPayloadError : public SnapshotError {
public:
  using SnapshotError::SnapshotError;
};

class SizeMismatchError : public SnapshotError {
public:
  using SnapshotError::SnapshotError;
};

}  // namespace sqglc

#endif
