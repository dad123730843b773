#pragma once

// Thin value-semantic wrapper over GNU MPFR.
//
// Every BigFloat carries its own precision. Binary operations produce a
// result whose precision is the larger of the two operands; conversions from
// double or integers use the calling thread's default precision (never less
// than 53 bits, so doubles convert exactly). Use PrecisionScope to change the
// default for a block.

#include <mpfr.h>

#include <complex>
#include <concepts>
#include <iosfwd>
#include <string>

namespace qfourier::mp {

using Bits = mpfr_prec_t;

Bits default_bits() noexcept;

class PrecisionScope {
 public:
  explicit PrecisionScope(Bits bits) noexcept;
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  Bits saved_;
};

class BigFloat {
 public:
  BigFloat();
  BigFloat(double x);  // NOLINT(google-explicit-constructor)
  BigFloat(double x, Bits bits);
  template <std::integral I>
  BigFloat(I x)  // NOLINT(google-explicit-constructor)
      : BigFloat(static_cast<double>(x)) {}

  static BigFloat with_bits(Bits bits);  // NaN placeholder
  static BigFloat parse(const std::string& text, Bits bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  Bits bits() const noexcept { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  /// Rounds in place to `bits` (exact when widening).
  void set_bits(Bits bits);

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const noexcept { return mpfr_get_d(v_, rnd); }
  explicit operator double() const noexcept { return to_double(); }

  /// Decimal scientific notation with enough digits to round-trip.
  std::string to_string() const;
  std::string to_string(int digits) const;

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  bool is_nan() const noexcept { return mpfr_nan_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }

  /// log2|x| as a double; -inf for zero. Valid far outside the double range.
  double log2_abs() const noexcept;

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat& operator+=(double o);
  BigFloat& operator-=(double o);
  BigFloat& operator*=(double o);
  BigFloat& operator/=(double o);

  BigFloat operator-() const;

 private:
  struct Uninit {};
  BigFloat(Uninit, Bits bits);
  void widen_to(Bits bits);

  mpfr_t v_;
};

BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);
BigFloat operator+(const BigFloat& a, double b);
BigFloat operator-(const BigFloat& a, double b);
BigFloat operator*(const BigFloat& a, double b);
BigFloat operator/(const BigFloat& a, double b);
BigFloat operator+(double a, const BigFloat& b);
BigFloat operator-(double a, const BigFloat& b);
BigFloat operator*(double a, const BigFloat& b);
BigFloat operator/(double a, const BigFloat& b);

int compare(const BigFloat& a, const BigFloat& b) noexcept;
int compare(const BigFloat& a, double b) noexcept;
inline bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }
inline bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
inline bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
inline bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
inline bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }
inline bool operator==(const BigFloat& a, double b) { return compare(a, b) == 0; }
inline bool operator<(const BigFloat& a, double b) { return compare(a, b) < 0; }
inline bool operator<=(const BigFloat& a, double b) { return compare(a, b) <= 0; }
inline bool operator>(const BigFloat& a, double b) { return compare(a, b) > 0; }
inline bool operator>=(const BigFloat& a, double b) { return compare(a, b) >= 0; }

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log1p(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat pow(const BigFloat& base, const BigFloat& e);
BigFloat pow(const BigFloat& base, long e);
BigFloat ldexp(const BigFloat& x, long e);
BigFloat hypot(const BigFloat& a, const BigFloat& b);
BigFloat max(const BigFloat& a, const BigFloat& b);

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

/// Complex number with BigFloat parts; just the field operations the q-series
/// evaluators need.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  BigComplex() = default;
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(const std::complex<double>& z, Bits bits) : re(z.real(), bits), im(z.imag(), bits) {}

  Bits bits() const noexcept { return std::max(re.bits(), im.bits()); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  /// log2 of max(|re|, |im|); within half a bit of log2|z|.
  double log2_abs() const noexcept;
  bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator*=(const BigFloat& o);
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigFloat& b);
BigComplex operator*(const BigFloat& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigFloat abs(const BigComplex& z);

/// Signed mantissa/exponent pair, value = mantissa * 2^exp2 with
/// 0.5 <= |mantissa| < 1. Keeps magnitudes that fall outside the double range.
struct ScaledReal {
  double mantissa = 0.0;
  long exp2 = 0;

  static ScaledReal from(const BigFloat& x);
  static ScaledReal from(double x);
  double to_double() const;
  double log10_abs() const;
  bool fits_double() const;
};

}  // namespace qfourier::mp
