#pragma once

// Independent reference values: the defining series summed term by term in
// long double, with every power and Pochhammer product formed explicitly.
// Slow and only good where cancellation is mild, which is where the tests
// use it.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>

namespace oracle {

inline long double poch(long double a, long double q, int n) {
  long double p = 1.0L;
  for (int j = 0; j < n; ++j) p *= 1.0L - a * std::pow(q, static_cast<long double>(j));
  return p;
}

inline long double poch_inf(long double a, long double q) {
  long double p = 1.0L;
  for (int j = 0; j < 4000; ++j) p *= 1.0L - a * std::pow(q, static_cast<long double>(j));
  return p;
}

inline long double cq(long double z, long double q) {
  long double s = 0.0L, den = 1.0L;  // den = (q;q)_{2n}
  for (int n = 0; n < 60; ++n) {
    if (n > 0) den *= (1.0L - std::pow(q, 2.0L * n - 1)) * (1.0L - std::pow(q, 2.0L * n));
    const long double t = std::pow(q, n * (n - 0.5L)) * std::pow(z, 2.0L * n) / den;
    s += (n % 2 ? -t : t);
  }
  return s;
}

inline long double sq(long double z, long double q) {
  long double s = 0.0L, den = 1.0L;  // den = (q^2;q)_{2n}
  for (int n = 0; n < 60; ++n) {
    if (n > 0) den *= (1.0L - std::pow(q, 2.0L * n)) * (1.0L - std::pow(q, 2.0L * n + 1));
    const long double t = std::pow(q, n * (n + 0.5L)) * std::pow(z, 2.0L * n) / den;
    s += (n % 2 ? -t : t);
  }
  return z / (1.0L - q) * s;
}

inline std::complex<long double> exp_q(std::complex<long double> w, long double q) {
  std::complex<long double> s = 0.0L;
  for (int n = 0; n < 200; ++n)
    s += std::pow(w, n) * std::pow(q, (n * n - n) / 4.0L) / poch(q, q, n);
  return s;
}

/// First sign change of f on [lo, hi] by scanning with `step`, then bisection.
inline double first_root(const std::function<long double(long double)>& f, double lo, double hi, double step) {
  long double a = lo, fa = f(a);
  for (long double b = lo + step; b <= hi; b += step) {
    const long double fb = f(b);
    if ((fa < 0) != (fb < 0)) {
      long double x = a, y = b;
      for (int i = 0; i < 80; ++i) {
        const long double m = 0.5L * (x + y);
        if ((f(m) < 0) == (fa < 0)) x = m;
        else y = m;
      }
      return static_cast<double>(0.5L * (x + y));
    }
    a = b;
    fa = fb;
  }
  return NAN;
}

/// splitmix64; the generators below only need reproducible uniform doubles.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1p-53; }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

}  // namespace oracle
