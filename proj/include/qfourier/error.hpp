#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qfourier {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A required input (one-sided limit, table entry, ...) was not supplied.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Series or iteration hit its term/step cap. Carries what was accumulated.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::complex<double> partial, std::size_t terms)
      : Error(what), partial_(partial), terms_(terms) {}

  std::complex<double> partial_value() const noexcept { return partial_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  std::complex<double> partial_;
  std::size_t terms_;
};

/// Result magnitude exceeds the double range. `log2_magnitude` is the
/// estimated binary exponent of the true value.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, double log2_magnitude)
      : Error(what + " (|value| ~ 2^" + std::to_string(static_cast<long long>(log2_magnitude)) + ")"),
        log2_magnitude_(log2_magnitude) {}

  double log2_magnitude() const noexcept { return log2_magnitude_; }

 private:
  double log2_magnitude_;
};

}  // namespace qfourier
