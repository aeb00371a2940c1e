#pragma once

#include <stdexcept>
#include <string>

namespace spmul {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different coefficient rings.
class RingMismatch : public Error {
 public:
  RingMismatch() : Error("operands are defined over different rings") {}
};

/// A precondition on an argument value is violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Field characteristic is too small for derivative-based exponent recovery.
class CharTooSmall : public Error {
 public:
  using Error::Error;
};

/// A randomized search ran out of its retry budget.
class RetryExhausted : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace spmul
