#pragma once

#include <stdexcept>
#include <string>

namespace aft {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ElementNotFound : public Error {
 public:
  explicit ElementNotFound(const std::string& id)
      : Error("element not found: " + id) {}
};

/// The input relation is not a partial order, or identifiers collide.
class InvalidPoset : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A structural requirement (complete lattice, bounded-completeness,
/// reliability, ...) does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class MonotonicityError : public Error {
 public:
  using Error::Error;
};

class InvalidRefinement : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace aft
