#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratiokit {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameter (bad size, negative beta, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameter combination that is valid in principle but not implemented.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Iteration cap reached, non-finite intermediate, failed validation of a
/// numerical invariant.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Zero (or floating-point-collided) spacing where a ratio needs a nonzero
/// denominator. `index()` is the position of the offending spacing.
class DegenerateSpectrumError : public Error {
 public:
  DegenerateSpectrumError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace ratiokit
