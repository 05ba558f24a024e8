#pragma once

#include <stdexcept>
#include <string>

namespace ndf {

// Exit-code contract shared with the command line tool:
//   0 success, 2 validation, 3 precision, 4 breakdown.
class Error : public std::runtime_error {
 public:
  Error(const std::string& msg, int exit_code)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& m) : Error(m, 2) {}
};

class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& m) : Error(m, 3) {}
};

class BreakdownError : public Error {
 public:
  explicit BreakdownError(const std::string& m) : Error(m, 4) {}
};

// A curve whose simplicity margin is not positive was passed to an
// operation that requires a Riemann map.
class UncertifiedCurveError : public ValidationError {
 public:
  explicit UncertifiedCurveError(const std::string& m) : ValidationError(m) {}
};

class BoundaryAmbiguousError : public ValidationError {
 public:
  explicit BoundaryAmbiguousError(const std::string& m) : ValidationError(m) {}
};

class OutsideDomainError : public ValidationError {
 public:
  explicit OutsideDomainError(const std::string& m) : ValidationError(m) {}
};

class BranchAmbiguityError : public ValidationError {
 public:
  explicit BranchAmbiguityError(const std::string& m) : ValidationError(m) {}
};

class NearSingularError : public ValidationError {
 public:
  explicit NearSingularError(const std::string& m) : ValidationError(m) {}
};

class OutOfRegimeError : public ValidationError {
 public:
  explicit OutOfRegimeError(const std::string& m) : ValidationError(m) {}
};

// Newton refinement failed to locate any solution.
class NoSolutionError : public BreakdownError {
 public:
  explicit NoSolutionError(const std::string& m) : BreakdownError(m) {}
};

}  // namespace ndf
