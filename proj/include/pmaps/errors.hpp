#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmaps {

// Base class for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold (zero direction,
// singular linear part, non-square map, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Operands live over different variable contexts.
class ContextMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Input exceeds the supported desk scale of the symbolic routines.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// An identity that holds by construction failed to verify: an arithmetic bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pmaps
