#pragma once

#include <stdexcept>
#include <string>

namespace frwave {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
  gate_failed = 1,
  domain = 2,
  convergence = 3,
  resonance = 4,
  invalid_argument = 5,
  internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what)
      : Error(ErrorKind::convergence, what) {}
};

/// Raised when a small divisor |omega^2 l^2 - j^2| falls below threshold.
class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, int l, int j, double divisor)
      : Error(ErrorKind::resonance, what), l_(l), j_(j), divisor_(divisor) {}
  int l() const noexcept { return l_; }
  int j() const noexcept { return j_; }
  double divisor() const noexcept { return divisor_; }

 private:
  int l_;
  int j_;
  double divisor_;
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

}  // namespace frwave
