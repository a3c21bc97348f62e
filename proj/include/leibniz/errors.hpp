#pragma once

#include <stdexcept>
#include <string>

namespace leibniz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NotSolvable : public Error {
 public:
  using Error::Error;
};

class NilradicalUndetermined : public Error {
 public:
  using Error::Error;
};

class UnknownFamily : public Error {
 public:
  using Error::Error;
};

/// Raised when family parameters violate a constraint; what() names the predicate.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class NotLeibniz : public Error {
 public:
  using Error::Error;
};

}  // namespace leibniz
