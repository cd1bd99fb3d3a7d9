#pragma once

#include <stdexcept>
#include <string>

namespace alat {

/// Root of the library's exception hierarchy. `exit_code()` is the process
/// status the CLI maps the failure to.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

/// Bad parameters, violated preconditions, malformed input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class RingMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A query needs points outside the region where the fragment is complete.
class CoreViolation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& what, int line, int column)
      : InvalidArgument(what + " (line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A checked property did not hold. The message names the witness.
class VerificationFailure : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Search space, enumeration size or integer range exhausted.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

class OverflowError : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

}  // namespace alat
