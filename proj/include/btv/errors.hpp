#pragma once

#include <stdexcept>
#include <string>

namespace btv {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An entry is outside [0,1], an index is out of range, or a value fails
/// validation.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Two vectors (or a subset's universe and a vector) disagree on length.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// n exceeds the exact-enumeration limit; callers should fall back to bounds.
class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

/// An operation requires a larger n (most small-regime results need n >= 2).
class NTooSmall : public Error {
 public:
  using Error::Error;
};

/// A check was invoked on a pair outside its regime without force.
class RegimeMismatch : public Error {
 public:
  using Error::Error;
};

/// Odds r/(1-r) requested for an entry equal to 1.
class OddsUndefined : public Error {
 public:
  using Error::Error;
};

/// The sum-of-odds hypothesis of the Poisson-binomial lemma fails.
class OddsConstraintViolated : public Error {
 public:
  using Error::Error;
};

/// lambda exceeds 1/(N+1), outside the extremal bound's hypothesis.
class LambdaTooLarge : public Error {
 public:
  using Error::Error;
};

/// The pair is not quasi-symmetric.
class NotQuasiSymmetric : public Error {
 public:
  using Error::Error;
};

/// An input document failed to parse or validate.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace btv
