#pragma once

// exp_q, C_q, S_q, S_q' and the third Jackson q-Bessel function.
//
// Double-precision entry points sum by term recurrence with a compensated
// accumulator. Backend::automatic inspects the cancellation ratio and re-sums
// in MPFR when double cannot deliver the value (peaks near the zeros of S_q
// reach q^{-k^2}). QKernel and KernelFamily are the multiprecision evaluators
// used by the zero finder and the Fourier machinery.

#include <complex>
#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <vector>

#include "qfourier/bigfloat.hpp"
#include "qfourier/qcore.hpp"

namespace qfourier {

enum class Backend { automatic, compensated, double_double, multiprecision };

enum class SeriesKind { exp_q, cosine, sine, sine_prime };

const char* to_string(Backend b) noexcept;
const char* to_string(SeriesKind k) noexcept;

template <class T>
struct SeriesValue {
  T value{};
  std::size_t terms_used = 0;
  /// Largest |term| (prefactor included); +inf if beyond the double range,
  /// see log2_peak.
  double peak_term_magnitude = 0.0;
  double log2_peak = 0.0;
  /// max(1, peak/|sum|) over the alternating sum (prefactors such as the
  /// z/(1-q) of S_q excluded); +inf when the sum is 0.
  double cancellation_ratio = 1.0;
  double log2_cancellation = 0.0;
  mp::Bits bits = 53;
  Backend backend = Backend::compensated;
};

SeriesValue<double> exp_q(double w, const QContext& ctx, Backend backend = Backend::automatic);
SeriesValue<std::complex<double>> exp_q(std::complex<double> w, const QContext& ctx,
                                        Backend backend = Backend::automatic);
SeriesValue<double> cq(double z, const QContext& ctx, Backend backend = Backend::automatic);
SeriesValue<std::complex<double>> cq(std::complex<double> z, const QContext& ctx,
                                     Backend backend = Backend::automatic);
SeriesValue<double> sq(double z, const QContext& ctx, Backend backend = Backend::automatic);
SeriesValue<std::complex<double>> sq(std::complex<double> z, const QContext& ctx,
                                     Backend backend = Backend::automatic);
SeriesValue<double> sq_prime(double z, const QContext& ctx, Backend backend = Backend::automatic);
SeriesValue<std::complex<double>> sq_prime(std::complex<double> z, const QContext& ctx,
                                           Backend backend = Backend::automatic);

SeriesValue<double> evaluate(SeriesKind kind, double z, const QContext& ctx, Backend backend = Backend::automatic);
SeriesValue<std::complex<double>> evaluate(SeriesKind kind, std::complex<double> z, const QContext& ctx,
                                           Backend backend = Backend::automatic);

/// J_nu^(3)(z; q) = z^nu (q^{nu+1};q)_inf/(q;q)_inf
///                 * sum (-1)^n q^{n(n+1)/2} z^{2n} / ((q^{nu+1};q)_n (q;q)_n).
/// Non-integer nu needs z > 0; negative integer nu is rejected. `q` is the
/// base of the function and may differ from ctx.q().
SeriesValue<double> jackson_bessel3(double nu, double z, double q, const QContext& ctx,
                                    Backend backend = Backend::automatic);
/// Complex argument; nu must be a non-negative integer.
SeriesValue<std::complex<double>> jackson_bessel3(double nu, std::complex<double> z, double q, const QContext& ctx,
                                                  Backend backend = Backend::automatic);
mp::BigFloat jackson_bessel3_mp(const mp::BigFloat& nu, const mp::BigFloat& z, const mp::BigFloat& q);

/// (log2 of the largest |term|, index of that term) for the inner sum of
/// `kind` at |z| = 2^log2_abs_z; prefactors excluded. Cheap; never overflows.
struct PeakEstimate {
  double log2_peak = 0.0;
  std::size_t index = 0;
};
PeakEstimate estimate_peak(SeriesKind kind, double q, double log2_abs_z);

/// Multiprecision evaluator at a fixed working precision. Ratio coefficients
/// of the term recurrences are tabulated at construction; the object is
/// immutable and may be shared between threads.
class QKernel {
 public:
  QKernel(const mp::BigFloat& q, mp::Bits bits, std::size_t table_terms = 96);
  QKernel(double q, mp::Bits bits, std::size_t table_terms = 96);

  mp::Bits bits() const noexcept { return bits_; }
  const mp::BigFloat& q() const noexcept { return q_; }
  const mp::BigFloat& sqrt_q() const noexcept { return sqrt_q_; }
  double q_double() const noexcept { return q_double_; }

  SeriesValue<mp::BigFloat> eval(SeriesKind kind, const mp::BigFloat& z,
                                 std::size_t max_terms = 1000000) const;
  SeriesValue<mp::BigComplex> eval(SeriesKind kind, const mp::BigComplex& z,
                                   std::size_t max_terms = 1000000) const;

  mp::BigFloat cq(const mp::BigFloat& z) const { return eval(SeriesKind::cosine, z).value; }
  mp::BigFloat sq(const mp::BigFloat& z) const { return eval(SeriesKind::sine, z).value; }
  mp::BigFloat sq_prime(const mp::BigFloat& z) const { return eval(SeriesKind::sine_prime, z).value; }

  /// Ratio t_{n+1} / (t_n * w) of the term recurrence; w = z^2 except for exp_q.
  void ratio(SeriesKind kind, std::size_t n, mp::BigFloat& out) const;
  const mp::BigFloat* tabulated_ratio(SeriesKind kind, std::size_t n) const noexcept;

 private:
  template <class V>
  SeriesValue<V> run(SeriesKind kind, const V& z, std::size_t max_terms) const;

  mp::Bits bits_;
  double q_double_;
  mp::BigFloat q_;
  mp::BigFloat sqrt_q_;
  mp::BigFloat one_minus_q_;
  std::vector<mp::BigFloat> exp_r_;
  std::vector<mp::BigFloat> cos_r_;
  std::vector<mp::BigFloat> sin_r_;
};

/// Kernels at geometrically spaced precisions for one q, created on demand.
/// eval_abs / eval_rel pick the working precision from the term peak.
class KernelFamily {
 public:
  explicit KernelFamily(double q);

  double q() const noexcept { return q_; }
  /// A kernel with at least `bits` of working precision.
  const QKernel& at_least(mp::Bits bits) const;

  /// Value with absolute error below about 2^abs_log2.
  SeriesValue<mp::BigFloat> eval_abs(SeriesKind kind, const mp::BigFloat& z, double abs_log2) const;
  SeriesValue<mp::BigComplex> eval_abs(SeriesKind kind, const mp::BigComplex& z, double abs_log2) const;
  /// Value with about `rel_bits` correct leading bits; re-evaluates at
  /// higher precision when the first pass shows deeper cancellation.
  SeriesValue<mp::BigFloat> eval_rel(SeriesKind kind, const mp::BigFloat& z, double rel_bits) const;
  SeriesValue<mp::BigComplex> eval_rel(SeriesKind kind, const mp::BigComplex& z, double rel_bits) const;

 private:
  double q_;
  mutable std::mutex mutex_;
  mutable std::deque<std::unique_ptr<QKernel>> kernels_;  // bucket i holds about 128 * 2^{i/2} bits
};

}  // namespace qfourier
