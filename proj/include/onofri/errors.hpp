#pragma once

#include <stdexcept>
#include <string>

namespace onofri {

// Input outside an operation's domain (bad dimension, rho >= C_n, radius
// outside the ball, ...). The CLI maps this to exit status 1.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A numerical procedure did not reach its tolerance. The CLI maps this to
// exit status 2.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
public:
  QuadratureError(const std::string& what, double estimate, double error_estimate)
      : NumericalError(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

private:
  double estimate_;
  double error_estimate_;
};

// Integration of the radial IVP broke down before reaching the requested
// radius (overflow, step-size underflow).
class BlowUpError : public NumericalError {
public:
  BlowUpError(const std::string& what, double radius_reached)
      : NumericalError(what), radius_reached_(radius_reached) {}

  double radius_reached() const noexcept { return radius_reached_; }

private:
  double radius_reached_;
};

// Two independent routes to the same quantity disagree.
class ConsistencyError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class InsufficientDataError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class UnsupportedError : public DomainError {
public:
  using DomainError::DomainError;
};

}  // namespace onofri
