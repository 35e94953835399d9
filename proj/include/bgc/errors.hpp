#pragma once

#include <stdexcept>
#include <string>

namespace bgc {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class BelowVacuum : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// The channel noise matrix violates the validity inequality for its kind.
/// Carries the most-negative eigenvalue of the violated matrix inequality.
class InequalityViolated : public Error {
 public:
  InequalityViolated(const std::string& what, double most_negative)
      : Error(what), most_negative_eigenvalue(most_negative) {}
  double most_negative_eigenvalue;
};

class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidChannel : public Error {
 public:
  using Error::Error;
};

class NotQuantumLimited : public Error {
 public:
  using Error::Error;
};

class NotQuantumLimitedAmplifier : public Error {
 public:
  using Error::Error;
};

class NotDiagonal : public Error {
 public:
  using Error::Error;
};

class NotCommuting : public Error {
 public:
  using Error::Error;
};

class NegativeArgument : public Error {
 public:
  using Error::Error;
};

class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

class ZeroNoise : public Error {
 public:
  using Error::Error;
};

class DimensionTooSmall : public Error {
 public:
  using Error::Error;
};

class TruncationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class GridBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input files or JSON documents.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace bgc
