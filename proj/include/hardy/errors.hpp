#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

class HardyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point outside a weight's open domain, a table queried outside its hull,
/// or a malformed weight description.
class DomainError : public HardyError {
 public:
  using HardyError::HardyError;
};

/// The tail functional W(x) is zero or infinite at an interior point.
class HypothesisViolation : public HardyError {
 public:
  using HardyError::HardyError;
};

/// r > 1: the inequality can only hold for trivial weights.
class TrivialWeights : public HardyError {
 public:
  using HardyError::HardyError;
};

/// A constant requested outside the exponent regime it is defined for.
class RegimeError : public HardyError {
 public:
  using HardyError::HardyError;
};

class QuadratureError : public HardyError {
 public:
  using HardyError::HardyError;
};

class ParseError : public HardyError {
 public:
  using HardyError::HardyError;
};

}  // namespace hardy
