#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "twistcoh/report.hpp"

namespace twistcoh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimensions of operands do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A vector expected to lie in a subspace does not.
class InclusionError : public Error {
 public:
  using Error::Error;
};

/// An ideal is not mapped into itself by a homomorphism.
class InvarianceError : public Error {
 public:
  using Error::Error;
};

/// A homomorphism of a triangular algebra does not respect the corner idempotents.
class CornerViolationError : public Error {
 public:
  using Error::Error;
};

/// The M-block map is not compatible with the module actions.
class SemilinearityError : public Error {
 public:
  using Error::Error;
};

/// Compatibility identities for assembling a derivation failed.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// A theorem-level hypothesis (e.g. vanishing of the AB corner) does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Line and column are 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? what + " at line " + std::to_string(line) + ", column " + std::to_string(column)
                   : what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Input object fails its axioms; carries the full report.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, ValidationReport report)
      : Error(what + "\n" + report.str()), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace twistcoh
