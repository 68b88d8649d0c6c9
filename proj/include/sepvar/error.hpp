#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sepvar {

/// Base of every error raised by the library. The CLI maps the three
/// categories below onto exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (usage error, exit code 2).
class InputError : public Error {
public:
  using Error::Error;
};

/// Numerical failure on otherwise valid input (exit code 3).
class NumericError : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public NumericError {
public:
  DivisionByZero() : NumericError("division by zero") {}
};

class NegativePowerOfZero : public NumericError {
public:
  NegativePowerOfZero() : NumericError("negative power of zero") {}
};

class SingularSystem : public NumericError {
public:
  explicit SingularSystem(std::size_t pivot)
      : NumericError("singular system: no admissible pivot in column " + std::to_string(pivot)),
        pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

private:
  std::size_t pivot_;
};

class SingularJacobian : public NumericError {
public:
  explicit SingularJacobian(const std::string& what) : NumericError("singular Jacobian: " + what) {}
};

class NewtonDiverged : public NumericError {
public:
  NewtonDiverged(int iterations, double residual)
      : NumericError("Newton iteration did not converge after " + std::to_string(iterations) +
                     " steps (max scaled residual " + std::to_string(residual) + ")") {}
};

class DimensionMismatch : public InputError {
public:
  explicit DimensionMismatch(const std::string& what) : InputError("dimension mismatch: " + what) {}
};

class DuplicateExponents : public InputError {
public:
  DuplicateExponents() : InputError("exponents must be pairwise distinct") {}
};

class DuplicateMonomials : public InputError {
public:
  DuplicateMonomials() : InputError("monomial exponent pairs must be pairwise distinct") {}
};

class NotCoprime : public InputError {
public:
  NotCoprime(int wn, int ws)
      : InputError("Weierstrass parameters (" + std::to_string(wn) + "," + std::to_string(ws) +
                   ") must be coprime and both >= 2") {}
};

class OrderTooHigh : public InputError {
public:
  OrderTooHigh(std::size_t row, int order, std::size_t n)
      : InputError("derivative order " + std::to_string(order) + " in row " + std::to_string(row) +
                   " annihilates the degree " + std::to_string(n - 1) + " basis") {}
};

class EmptyWindow : public InputError {
public:
  EmptyWindow() : InputError("sampling window is empty or degenerate") {}
};

/// A Poisson structure puts nonzero weight on a slot that fails the
/// deleted-row rank hypothesis. Reported as a verification failure (exit 1).
class HypothesisViolated : public Error {
public:
  explicit HypothesisViolated(std::size_t slot)
      : Error("hypothesis violated: slot " + std::to_string(slot + 1) +
              " fails the deleted-row rank condition but carries nonzero weight"),
        slot_(slot) {}
  std::size_t slot() const noexcept { return slot_; }

private:
  std::size_t slot_;
};

class TooManySingularSamples : public NumericError {
public:
  TooManySingularSamples(std::size_t singular, std::size_t draws)
      : NumericError("too many singular samples: " + std::to_string(singular) + " of " +
                     std::to_string(draws) + " draws") {}
};

} // namespace sepvar
