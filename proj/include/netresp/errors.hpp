#pragma once

#include <stdexcept>
#include <string>

namespace netresp {

// Error hierarchy shared across the library.  The CLI maps these onto its
// exit-code contract: validation errors -> 1, computational errors -> 2,
// I/O errors -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter or input violates its declared domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A schedule does not cover the requested depth horizon.
class ScheduleLengthError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Malformed scenario or edge-list text; carries the 1-based source position.
class ParseError : public ValidationError {
 public:
  ParseError(int line, int column, const std::string& message)
      : ValidationError("line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// An infinite-horizon quantity was requested at or above the critical ratio.
class DivergentHorizon : public Error {
 public:
  using Error::Error;
};

// ODE integration step produced conservation drift or negative excursions
// beyond the accepted bound; the caller must shrink the step.
class StepTooLarge : public Error {
 public:
  using Error::Error;
};

// A sweep grid exceeds the configured row cap.
class GridCapExceeded : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace netresp
