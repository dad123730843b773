#pragma once

// Term-recurrence summation loops shared by the q-series evaluators.
// t_0 = 1, t_{n+1} = t_n * ratio(n) * w, result = sum weight(n) * t_n.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>

#include "qfourier/bigfloat.hpp"
#include "qfourier/error.hpp"

namespace qfourier::detail {

inline double log2_abs(double x) noexcept {
  return x == 0.0 ? -std::numeric_limits<double>::infinity() : std::log2(std::fabs(x));
}
inline double log2_abs(std::complex<double> z) noexcept {
  const double a = std::abs(z);
  return a == 0.0 ? -std::numeric_limits<double>::infinity() : std::log2(a);
}
inline double log2_abs(const mp::BigFloat& x) noexcept { return x.log2_abs(); }
inline double log2_abs(const mp::BigComplex& z) noexcept {
  // log2 max(|re|,|im|) is within half a bit of log2|z|; good enough for stop rules.
  return z.log2_abs();
}

inline bool all_finite(double x) noexcept { return std::isfinite(x); }
inline bool all_finite(std::complex<double> z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <class V>
struct RunResult {
  V sum{};
  std::size_t terms = 0;
  double log2_peak = -std::numeric_limits<double>::infinity();
  bool finite = true;
};

/// Double-precision loop. `ratio` is called with n = 0, 1, 2, ... in order.
template <class V, class Acc, class Ratio, class Weight>
RunResult<V> run_double(V w, Ratio&& ratio, Weight&& weight, std::size_t peak_index, double tol,
                        std::size_t max_terms, const char* who) {
  Acc acc;
  V t = V(1.0);
  RunResult<V> r;
  const double floor_log2 = 2.0 * std::log2(tol);
  for (std::size_t n = 0; n < max_terms; ++n) {
    const V wt = t * weight(n);
    acc.add(wt);
    r.terms = n + 1;
    if (!all_finite(wt)) {
      r.finite = false;
      r.sum = acc.value();
      return r;
    }
    const double lt = log2_abs(wt);
    if (lt > r.log2_peak) r.log2_peak = lt;
    if (n > peak_index && n >= 2 * peak_index) {
      const V s = acc.value();
      if (std::abs(wt) <= tol * std::abs(s) || lt <= r.log2_peak + floor_log2) {
        r.sum = s;
        return r;
      }
    }
    t = t * (ratio(n) * w);
  }
  throw NonConvergenceError(std::string(who) + ": max_terms exhausted", std::complex<double>(acc.value()),
                            max_terms);
}

template <class V>
V mp_constant(double v, mp::Bits bits);
template <>
inline mp::BigFloat mp_constant<mp::BigFloat>(double v, mp::Bits bits) {
  return mp::BigFloat(v, bits);
}
template <>
inline mp::BigComplex mp_constant<mp::BigComplex>(double v, mp::Bits bits) {
  return {mp::BigFloat(v, bits), mp::BigFloat(0.0, bits)};
}

/// MPFR loop at `bits`. `ratio(n, scratch)` returns a reference to the n-th
/// ratio (possibly `scratch`); `weight(n)` is a small integer.
template <class V, class Ratio, class Weight>
RunResult<V> run_mp(const V& w, Ratio&& ratio, Weight&& weight, std::size_t peak_index, mp::Bits bits,
                    std::size_t max_terms, const char* who) {
  V t = mp_constant<V>(1.0, bits);
  V sum = mp_constant<V>(0.0, bits);
  mp::BigFloat scratch = mp::BigFloat::with_bits(bits);
  RunResult<V> r;
  const double rel = -static_cast<double>(bits) - 2.0;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const long wn = weight(n);
    if (wn == 1) {
      sum += t;
    } else {
      V wt = t;
      wt *= mp::BigFloat(static_cast<double>(wn), bits);
      sum += wt;
    }
    r.terms = n + 1;
    const double lt = log2_abs(t) + std::log2(static_cast<double>(wn));
    if (lt > r.log2_peak) r.log2_peak = lt;
    if (n > peak_index && n >= 2 * peak_index) {
      if (lt <= log2_abs(sum) + rel || lt <= r.log2_peak + 2.0 * rel) {
        r.sum = std::move(sum);
        return r;
      }
    }
    t *= ratio(n, scratch);
    t *= w;
  }
  throw NonConvergenceError(std::string(who) + ": max_terms exhausted (multiprecision)",
                            std::complex<double>(0.0), max_terms);
}

}  // namespace qfourier::detail
