#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  validation,   // bad parameters or inputs
  capacity,     // table limit / memory ceiling
  budget,       // term or pair-scan budget exceeded
  degenerate,   // quantity undefined for the input (e.g. 0/0 ratio)
  consistency,  // an internal cross-check failed; signals a bug
};

const char* to_string(ErrorKind kind) noexcept;

/// Exit status for a failure kind: 2 validation, 3 budget/capacity, 4 consistency.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorKind::capacity, what) {}
};

class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, unsigned long long required)
      : Error(ErrorKind::budget, what), required_(required) {}
  /// The amount of work (terms, pairs) the request would have needed.
  unsigned long long required() const noexcept { return required_; }

 private:
  unsigned long long required_;
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what) : Error(ErrorKind::degenerate, what) {}
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what) : Error(ErrorKind::consistency, what) {}
};

}  // namespace dioph
