#pragma once

// Error-free-transform accumulators for alternating series.

#include <cmath>
#include <complex>

namespace qfourier {

/// Neumaier's variant of Kahan summation; robust when addends exceed the sum.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Unevaluated sum hi + lo carrying ~106 bits of significand.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  static DoubleDouble two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
  }

  DoubleDouble& operator+=(double x) noexcept {
    DoubleDouble s = two_sum(hi, x);
    s.lo += lo;
    *this = two_sum(s.hi, s.lo);
    return *this;
  }

  double value() const noexcept { return hi + lo; }
};

class DoubleDoubleSum {
 public:
  void add(double x) noexcept { acc_ += x; }
  double value() const noexcept { return acc_.value(); }

 private:
  DoubleDouble acc_;
};

/// Component-wise complex accumulator over any real accumulator.
template <class Acc>
class ComplexSum {
 public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  Acc re_;
  Acc im_;
};

}  // namespace qfourier
