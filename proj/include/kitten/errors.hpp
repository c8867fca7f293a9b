#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace kitten {

/// Short rendering of a value for error messages.
inline std::string error_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested polynomial order exceeds the factorial cache.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A power series failed to converge within its term cap.
class SeriesError : public Error {
 public:
  using Error::Error;
};

/// Fock truncation (or a mode-sum truncation) leaves too much weight in the tail.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a closed form.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Phase-space grid does not contain the support of a distribution.
class GridExtentError : public Error {
 public:
  using Error::Error;
};

/// Two grids (or matrices) that must match do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Two independent evaluation routes disagree beyond tolerance.
class CrossCheckError : public Error {
 public:
  using Error::Error;
};

/// A density matrix violates positivity beyond the numerical window.
class NumericalValidityError : public Error {
 public:
  using Error::Error;
};

/// Angular alignment has no preferred direction (flat profile).
class AlignmentError : public Error {
 public:
  using Error::Error;
};

class LinearAlgebraError : public Error {
 public:
  using Error::Error;
};

/// Configuration or ensemble file could not be parsed.  `line` is 1-based, 0 when
/// the problem is not tied to a line (command-line override, missing key).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kitten
