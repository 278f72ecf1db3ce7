#pragma once

#include <stdexcept>
#include <string>

namespace wreslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension, depth or index mismatch between operands.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A requested expansion depth lies below what the inputs determine.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, int attainable_floor)
      : Error(what), attainable_floor_(attainable_floor) {}
  explicit PrecisionError(const std::string& what) : Error(what) {}

  /// Lowest degree the inputs can determine; INT_MIN when not applicable.
  int attainable_floor() const noexcept { return attainable_floor_; }

 private:
  int attainable_floor_ = -2147483647 - 1;
};

/// An operation's mathematical precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Principal symbol not invertible (or its inverse is not representable).
class EllipticityError : public Error {
 public:
  using Error::Error;
};

/// Spectrum too close to the integration contour.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Fourier support exceeded the configured cap with truncation disabled.
class CapError : public Error {
 public:
  using Error::Error;
};

/// apply_to_function called on a symbol that is not polynomial in xi.
class UnsupportedOracleError : public Error {
 public:
  using Error::Error;
};

/// A sampled map on Mat(k) is not multiplicative.
class NotAutomorphismError : public Error {
 public:
  using Error::Error;
};

/// Sampled transition data violates the convolution-bundle structure.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Invalid command-line or suite configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document; `pointer()` is a JSON pointer to the offending node.
class ParseError : public Error {
 public:
  ParseError(const std::string& pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer_(pointer) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace wreslab
