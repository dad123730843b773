#include "qfourier/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qfourier::mp {

namespace {

thread_local Bits t_default_bits = 128;

Bits conversion_bits() noexcept { return std::max<Bits>(t_default_bits, 53); }

}  // namespace

Bits default_bits() noexcept { return t_default_bits; }

PrecisionScope::PrecisionScope(Bits bits) noexcept : saved_(t_default_bits) {
  t_default_bits = std::max<Bits>(bits, MPFR_PREC_MIN);
}

PrecisionScope::~PrecisionScope() { t_default_bits = saved_; }

BigFloat::BigFloat() : BigFloat(0.0) {}

BigFloat::BigFloat(double x) : BigFloat(x, conversion_bits()) {}

BigFloat::BigFloat(double x, Bits bits) {
  mpfr_init2(v_, std::max<Bits>(bits, MPFR_PREC_MIN));
  mpfr_set_d(v_, x, MPFR_RNDN);
}

BigFloat::BigFloat(Uninit, Bits bits) { mpfr_init2(v_, std::max<Bits>(bits, MPFR_PREC_MIN)); }

BigFloat BigFloat::with_bits(Bits bits) { return BigFloat(Uninit{}, bits); }

BigFloat BigFloat::parse(const std::string& text, Bits bits) {
  BigFloat r(Uninit{}, bits);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    // mpfr_set_str returns nonzero only when the whole string is not a number.
    char* end = nullptr;
    mpfr_strtofr(r.v_, text.c_str(), &end, 10, MPFR_RNDN);
    if (end == text.c_str() || *end != '\0') {
      throw std::invalid_argument("not a decimal number: " + text);
    }
  }
  return r;
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.bits());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    if (bits() != other.bits()) mpfr_set_prec(v_, other.bits());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

void BigFloat::set_bits(Bits bits) { mpfr_prec_round(v_, std::max<Bits>(bits, MPFR_PREC_MIN), MPFR_RNDN); }

void BigFloat::widen_to(Bits b) {
  if (b > bits()) mpfr_prec_round(v_, b, MPFR_RNDN);
}

std::string BigFloat::to_string() const {
  // bits * log10(2) significant digits plus two guard digits round-trips.
  const int digits = static_cast<int>(std::ceil(static_cast<double>(bits()) * 0.30102999566398120)) + 2;
  return to_string(digits);
}

std::string BigFloat::to_string(int digits) const {
  if (is_nan()) return "nan";
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

double BigFloat::log2_abs() const noexcept {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  if (!is_finite()) return std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return static_cast<double>(e) + std::log2(std::fabs(m));
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  widen_to(o.bits());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  widen_to(o.bits());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  widen_to(o.bits());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  widen_to(o.bits());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator+=(double o) {
  mpfr_add_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(double o) {
  mpfr_sub_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(double o) {
  mpfr_mul_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(double o) {
  mpfr_div_d(v_, v_, o, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(Uninit{}, bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

namespace {

template <class Op>
BigFloat binary(const BigFloat& a, const BigFloat& b, Op op) {
  BigFloat r = BigFloat::with_bits(std::max(a.bits(), b.bits()));
  op(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

template <class Op>
BigFloat unary(const BigFloat& a, Op op) {
  BigFloat r = BigFloat::with_bits(a.bits());
  op(r.get(), a.get(), MPFR_RNDN);
  return r;
}

}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div); }

BigFloat operator+(const BigFloat& a, double b) {
  BigFloat r = a;
  return r += b;
}
BigFloat operator-(const BigFloat& a, double b) {
  BigFloat r = a;
  return r -= b;
}
BigFloat operator*(const BigFloat& a, double b) {
  BigFloat r = a;
  return r *= b;
}
BigFloat operator/(const BigFloat& a, double b) {
  BigFloat r = a;
  return r /= b;
}
BigFloat operator+(double a, const BigFloat& b) { return b + a; }
BigFloat operator-(double a, const BigFloat& b) {
  BigFloat r = BigFloat::with_bits(b.bits());
  mpfr_d_sub(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator*(double a, const BigFloat& b) { return b * a; }
BigFloat operator/(double a, const BigFloat& b) {
  BigFloat r = BigFloat::with_bits(b.bits());
  mpfr_d_div(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}

int compare(const BigFloat& a, const BigFloat& b) noexcept { return mpfr_cmp(a.get(), b.get()); }
int compare(const BigFloat& a, double b) noexcept { return mpfr_cmp_d(a.get(), b); }

BigFloat abs(const BigFloat& x) { return unary(x, mpfr_abs); }
BigFloat sqrt(const BigFloat& x) { return unary(x, mpfr_sqrt); }
BigFloat log(const BigFloat& x) { return unary(x, mpfr_log); }
BigFloat log1p(const BigFloat& x) { return unary(x, mpfr_log1p); }
BigFloat exp(const BigFloat& x) { return unary(x, mpfr_exp); }
BigFloat pow(const BigFloat& base, const BigFloat& e) { return binary(base, e, mpfr_pow); }
BigFloat pow(const BigFloat& base, long e) {
  BigFloat r = BigFloat::with_bits(base.bits());
  mpfr_pow_si(r.get(), base.get(), e, MPFR_RNDN);
  return r;
}
BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat r = BigFloat::with_bits(x.bits());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}
BigFloat hypot(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_hypot); }
BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
  return os << x.to_string(static_cast<int>(os.precision()));
}

double BigComplex::log2_abs() const noexcept { return std::max(re.log2_abs(), im.log2_abs()); }

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}
BigComplex& BigComplex::operator*=(const BigFloat& o) {
  re *= o;
  im *= o;
  return *this;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  BigComplex r = a;
  return r += b;
}
BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  BigComplex r = a;
  return r -= b;
}
BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  BigComplex r = a;
  return r *= b;
}
BigComplex operator*(const BigComplex& a, const BigFloat& b) {
  BigComplex r = a;
  return r *= b;
}
BigComplex operator*(const BigFloat& a, const BigComplex& b) { return b * a; }
BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  const BigFloat den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
BigFloat abs(const BigComplex& z) { return hypot(z.re, z.im); }

ScaledReal ScaledReal::from(const BigFloat& x) {
  if (x.is_zero() || !x.is_finite()) return {x.to_double(), 0};
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return {m, e};
}

ScaledReal ScaledReal::from(double x) {
  int e = 0;
  const double m = std::frexp(x, &e);
  return {m, e};
}

double ScaledReal::to_double() const {
  if (exp2 > std::numeric_limits<int>::max()) return mantissa * std::numeric_limits<double>::infinity();
  if (exp2 < std::numeric_limits<int>::min()) return mantissa * 0.0;
  return std::ldexp(mantissa, static_cast<int>(exp2));
}

double ScaledReal::log10_abs() const {
  if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log10(std::fabs(mantissa)) + static_cast<double>(exp2) * 0.30102999566398120;
}

bool ScaledReal::fits_double() const {
  // Normal doubles only; subnormals lose relative precision.
  return mantissa == 0.0 || (exp2 <= std::numeric_limits<double>::max_exponent &&
                             exp2 >= std::numeric_limits<double>::min_exponent);
}

}  // namespace qfourier::mp
