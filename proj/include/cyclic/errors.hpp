#pragma once

#include <stdexcept>
#include <string>

namespace cyclic {

// Error taxonomy. The CLI maps categories to exit codes:
// ValidationError -> 2, NumericalError -> 3, IoError -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};
struct NumericalError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

// Input shape / precondition failures.
struct DegenerateInput : ValidationError {
  using ValidationError::ValidationError;
};
struct UnequalIntervals : ValidationError {
  using ValidationError::ValidationError;
};
struct UnsupportedShape : ValidationError {
  using ValidationError::ValidationError;
};
struct InvalidMomentum : ValidationError {
  using ValidationError::ValidationError;
};
struct NotQuadratic : ValidationError {
  using ValidationError::ValidationError;
};
struct BadLabels : ValidationError {
  using ValidationError::ValidationError;
};
struct NotSymmetric : ValidationError {
  using ValidationError::ValidationError;
};
struct InsufficientData : ValidationError {
  using ValidationError::ValidationError;
};
struct ParseError : ValidationError {
  using ValidationError::ValidationError;
};
// Missing/unreadable input file: a ParseError by contract, but the CLI
// reports it with the I/O exit code.
struct FileNotFound : ParseError {
  using ParseError::ParseError;
};

// Algorithm-level failures on well-formed input.
struct NoSolutionFound : NumericalError {
  using NumericalError::NumericalError;
};
struct CertificationFailed : NumericalError {
  using NumericalError::NumericalError;
};
struct NonFinite : NumericalError {
  using NumericalError::NumericalError;
};
struct Timeout : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace cyclic
