#pragma once

#include <stdexcept>
#include <string>

namespace supergeo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different spaces, domains or variable sets.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// Invalid scalar argument (negative count, out-of-range index, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial object violates its structural invariant.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A homogeneous slot received data of the wrong parity.
class ParityError : public Error {
 public:
  using Error::Error;
};

/// Underlying map leaves the target box.
class ImageError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested beyond a declared filtration bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Composition of morphisms whose domains do not chain.
class ChainMismatch : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the box it was required to lie in.
class BoxViolation : public Error {
 public:
  using Error::Error;
};

/// Validation of user data (cocycles, families) failed.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed DSL input, with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + what), line_(line), col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

}  // namespace supergeo
