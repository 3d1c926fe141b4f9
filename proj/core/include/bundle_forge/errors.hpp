#pragma once

#include <stdexcept>
#include <string>

namespace bundle_forge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied something outside an operation's domain (bad variable id,
/// length mismatch, unsupported gauge class, malformed serialized input, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A polynomial that was required to be U(1)-invariant (or of a fixed
/// equivariance type) is not.
class NotInvariant : public Error {
 public:
  using Error::Error;
};

/// A computation would leave the exact field (an irrational radical that does
/// not pair to a rational square).
class OutsideExactField : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold by construction failed. Signals a bug,
/// never a data condition.
class ConsistencyFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace bundle_forge
