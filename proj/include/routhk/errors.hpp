#pragma once

#include <stdexcept>
#include <string>

namespace routhk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A derivative or function value came out non-finite.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Grid too small or malformed for the requested stencil.
class GridError : public Error {
 public:
  using Error::Error;
};

class BasePointMismatch : public Error {
 public:
  using Error::Error;
};

/// Newton iteration failed to reach its tolerance. For the momentum
/// level-set lift this signals a loss of G-regularity near the jet.
class NewtonDivergence : public Error {
 public:
  using Error::Error;
};

class UnknownExample : public Error {
 public:
  using Error::Error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

class InconsistentConstraints : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace routhk
