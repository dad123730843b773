#include "qfourier/qtrig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qfourier/error.hpp"
#include "qfourier/summation.hpp"
#include "series_engine.hpp"

namespace qfourier {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Above this many bits of cancellation the automatic backend leaves double.
constexpr double kEscalateLog2 = 8.0;
// Guard bits kept beyond the 53 a double result needs.
constexpr double kGuardBits = 40.0;

mp::Bits round_bits(double b) {
  const double clamped = std::clamp(b, 64.0, 1e7);
  return static_cast<mp::Bits>(std::ceil(clamped / 64.0) * 64.0);
}

// Sequential double ratios for the kernel series.
class DoubleRatios {
 public:
  DoubleRatios(SeriesKind kind, double q) : kind_(kind), q_(q), qh_(std::sqrt(q)) {}

  double operator()(std::size_t) {
    double r = 0.0;
    switch (kind_) {
      case SeriesKind::exp_q:
        r = p_ / (1.0 - q_ * p_ * p_);  // q^{n/2} / (1 - q^{n+1})
        p_ *= qh_;
        return r;
      case SeriesKind::cosine:
        r = -(qh_ * p_) / ((1.0 - q_ * p_) * (1.0 - q_ * q_ * p_));
        break;
      case SeriesKind::sine:
      case SeriesKind::sine_prime:
        r = -(q_ * qh_ * p_) / ((1.0 - q_ * q_ * p_) * (1.0 - q_ * q_ * q_ * p_));
        break;
    }
    p_ *= q_ * q_;
    return r;
  }

 private:
  SeriesKind kind_;
  double q_;
  double qh_;
  double p_ = 1.0;  // q^{n/2} for exp_q, q^{2n} otherwise
};

long kind_weight(SeriesKind kind, std::size_t n) {
  return kind == SeriesKind::sine_prime ? static_cast<long>(2 * n + 1) : 1L;
}

template <class V>
V inner_argument(SeriesKind kind, const V& z) {
  return kind == SeriesKind::exp_q ? z : z * z;
}

double log2_prefactor(SeriesKind kind, double q, double log2_abs_z) {
  switch (kind) {
    case SeriesKind::sine:
      return log2_abs_z - std::log2(1.0 - q);
    case SeriesKind::sine_prime:
      return -std::log2(1.0 - q);
    default:
      return 0.0;
  }
}

template <class V>
void fill_telemetry(SeriesValue<V>& out, double log2_peak_inner, double log2_sum, double log2_pref) {
  out.log2_peak = log2_peak_inner + log2_pref;
  out.peak_term_magnitude = out.log2_peak > 1023.0 ? kInf : std::exp2(out.log2_peak);
  if (log2_sum == -kInf) {
    out.log2_cancellation = kInf;
    out.cancellation_ratio = kInf;
  } else {
    out.log2_cancellation = std::max(0.0, log2_peak_inner - log2_sum);
    out.cancellation_ratio = out.log2_cancellation > 1023.0 ? kInf : std::exp2(out.log2_cancellation);
  }
}

double to_double_checked(const mp::BigFloat& v, const char* who) {
  const double l = v.log2_abs();
  if (l >= 1024.0) throw OverflowError(std::string(who) + ": value exceeds the double range", l);
  return v.to_double();
}

std::complex<double> to_double_checked(const mp::BigComplex& v, const char* who) {
  return {to_double_checked(v.re, who), to_double_checked(v.im, who)};
}

template <class V>
struct MpOf;
template <>
struct MpOf<double> {
  using type = mp::BigFloat;
  static type make(double z, mp::Bits bits) { return mp::BigFloat(z, bits); }
};
template <>
struct MpOf<std::complex<double>> {
  using type = mp::BigComplex;
  static type make(std::complex<double> z, mp::Bits bits) { return mp::BigComplex(z, bits); }
};

template <class V>
SeriesValue<V> eval_double_api(SeriesKind kind, V z, const QContext& ctx, Backend backend) {
  const double q = ctx.q();
  const char* who = to_string(kind);
  const double l2z = detail::log2_abs(z);
  const PeakEstimate pk = estimate_peak(kind, q, l2z);
  const double l2pref = log2_prefactor(kind, q, l2z);
  V pref = V(1.0);
  if (kind == SeriesKind::sine) pref = z / (1.0 - q);
  if (kind == SeriesKind::sine_prime) pref = V(1.0 / (1.0 - q));

  SeriesValue<V> out;
  double cancel_hint = pk.log2_peak + 64.0;
  if (backend != Backend::multiprecision) {
    if (pk.log2_peak < 1000.0) {
      const V w = inner_argument(kind, z);
      DoubleRatios ratios(kind, q);
      auto weight = [kind](std::size_t n) { return static_cast<double>(kind_weight(kind, n)); };
      detail::RunResult<V> r;
      if (backend == Backend::double_double) {
        if constexpr (std::is_same_v<V, double>) {
          r = detail::run_double<V, DoubleDoubleSum>(w, ratios, weight, pk.index, ctx.series_tol(),
                                                     ctx.max_terms(), who);
        } else {
          r = detail::run_double<V, ComplexSum<DoubleDoubleSum>>(w, ratios, weight, pk.index, ctx.series_tol(),
                                                                 ctx.max_terms(), who);
        }
      } else {
        if constexpr (std::is_same_v<V, double>) {
          r = detail::run_double<V, NeumaierSum>(w, ratios, weight, pk.index, ctx.series_tol(), ctx.max_terms(),
                                                 who);
        } else {
          r = detail::run_double<V, ComplexSum<NeumaierSum>>(w, ratios, weight, pk.index, ctx.series_tol(),
                                                             ctx.max_terms(), who);
        }
      }
      out.value = pref * r.sum;
      out.terms_used = r.terms;
      out.bits = backend == Backend::double_double ? 106 : 53;
      out.backend = backend == Backend::automatic ? Backend::compensated : backend;
      fill_telemetry(out, r.log2_peak, detail::log2_abs(r.sum), l2pref);
      const bool finite = r.finite && detail::all_finite(out.value);
      if (backend != Backend::automatic) {
        if (!finite) throw OverflowError(std::string(who) + ": value exceeds the double range", out.log2_peak);
        return out;
      }
      if (finite && out.log2_cancellation <= kEscalateLog2) return out;
      if (finite && std::isfinite(out.log2_cancellation)) cancel_hint = out.log2_cancellation;
    } else if (backend != Backend::automatic) {
      throw OverflowError(std::string(who) + ": series terms exceed the double range", pk.log2_peak + l2pref);
    }
  }

  using M = typename MpOf<V>::type;
  double bits = 53.0 + kGuardBits + cancel_hint;
  for (int round = 0;; ++round) {
    const mp::Bits b = round_bits(bits);
    const QKernel kernel(q, b, 2 * pk.index + 40);
    SeriesValue<M> r = kernel.eval(kind, MpOf<V>::make(z, b), ctx.max_terms());
    const double need = r.log2_cancellation + 53.0 + 24.0;
    if (static_cast<double>(b) >= need || round >= 6 || !std::isfinite(r.log2_cancellation)) {
      out.value = to_double_checked(r.value, who);
      out.terms_used = r.terms_used;
      out.peak_term_magnitude = r.peak_term_magnitude;
      out.log2_peak = r.log2_peak;
      out.cancellation_ratio = r.cancellation_ratio;
      out.log2_cancellation = r.log2_cancellation;
      out.bits = b;
      out.backend = Backend::multiprecision;
      return out;
    }
    bits = r.log2_cancellation + 53.0 + kGuardBits;
  }
}

}  // namespace

const char* to_string(Backend b) noexcept {
  switch (b) {
    case Backend::automatic:
      return "automatic";
    case Backend::compensated:
      return "compensated";
    case Backend::double_double:
      return "double_double";
    case Backend::multiprecision:
      return "multiprecision";
  }
  return "?";
}

const char* to_string(SeriesKind k) noexcept {
  switch (k) {
    case SeriesKind::exp_q:
      return "exp_q";
    case SeriesKind::cosine:
      return "C_q";
    case SeriesKind::sine:
      return "S_q";
    case SeriesKind::sine_prime:
      return "S_q'";
  }
  return "?";
}

PeakEstimate estimate_peak(SeriesKind kind, double q, double log2_abs_z) {
  const double lw = kind == SeriesKind::exp_q ? log2_abs_z : 2.0 * log2_abs_z;
  DoubleRatios ratios(kind, q);
  PeakEstimate pk;
  double cum = 0.0;
  std::size_t past = 0;
  for (std::size_t n = 0; n < 10000000; ++n) {
    const double wl = cum + std::log2(static_cast<double>(kind_weight(kind, n)));
    if (wl > pk.log2_peak) {
      pk.log2_peak = wl;
      pk.index = n;
    }
    const double lr = std::log2(std::fabs(ratios(n))) + lw;
    if (lr < 0.0 && ++past > (kind == SeriesKind::sine_prime ? 4u : 0u)) break;
    cum += lr;
  }
  return pk;
}

SeriesValue<double> evaluate(SeriesKind kind, double z, const QContext& ctx, Backend backend) {
  return eval_double_api(kind, z, ctx, backend);
}
SeriesValue<std::complex<double>> evaluate(SeriesKind kind, std::complex<double> z, const QContext& ctx,
                                           Backend backend) {
  return eval_double_api(kind, z, ctx, backend);
}

SeriesValue<double> exp_q(double w, const QContext& ctx, Backend backend) {
  return evaluate(SeriesKind::exp_q, w, ctx, backend);
}
SeriesValue<std::complex<double>> exp_q(std::complex<double> w, const QContext& ctx, Backend backend) {
  return evaluate(SeriesKind::exp_q, w, ctx, backend);
}
SeriesValue<double> cq(double z, const QContext& ctx, Backend backend) {
  return evaluate(SeriesKind::cosine, z, ctx, backend);
}
SeriesValue<std::complex<double>> cq(std::complex<double> z, const QContext& ctx, Backend backend) {
  return evaluate(SeriesKind::cosine, z, ctx, backend);
}
SeriesValue<double> sq(double z, const QContext& ctx, Backend backend) {
  return evaluate(SeriesKind::sine, z, ctx, backend);
}
SeriesValue<std::complex<double>> sq(std::complex<double> z, const QContext& ctx, Backend backend) {
  return evaluate(SeriesKind::sine, z, ctx, backend);
}
SeriesValue<double> sq_prime(double z, const QContext& ctx, Backend backend) {
  return evaluate(SeriesKind::sine_prime, z, ctx, backend);
}
SeriesValue<std::complex<double>> sq_prime(std::complex<double> z, const QContext& ctx, Backend backend) {
  return evaluate(SeriesKind::sine_prime, z, ctx, backend);
}

// ---------------------------------------------------------------------------
// QKernel

QKernel::QKernel(double q, mp::Bits bits, std::size_t table_terms)
    : QKernel(mp::BigFloat(q, std::max<mp::Bits>(bits, 53)), bits, table_terms) {}

QKernel::QKernel(const mp::BigFloat& q, mp::Bits bits, std::size_t table_terms)
    : bits_(std::max<mp::Bits>(bits, 53)),
      q_double_(q.to_double()),
      q_(q),
      sqrt_q_(),
      one_minus_q_() {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("QKernel: q must lie in (0, 1)");
  q_.set_bits(bits_);
  sqrt_q_ = mp::sqrt(q_);
  one_minus_q_ = 1.0 - q_;

  exp_r_.reserve(table_terms);
  cos_r_.reserve(table_terms);
  sin_r_.reserve(table_terms);
  const mp::BigFloat q2 = q_ * q_;
  mp::BigFloat half_pow(1.0, bits_);  // q^{n/2}
  mp::BigFloat even_pow(1.0, bits_);  // q^{2n}
  for (std::size_t n = 0; n < table_terms; ++n) {
    exp_r_.push_back(half_pow / (1.0 - q_ * half_pow * half_pow));
    half_pow *= sqrt_q_;
    const mp::BigFloat a = q_ * even_pow;  // q^{2n+1}
    const mp::BigFloat b = q2 * even_pow;  // q^{2n+2}
    const mp::BigFloat c = q_ * b;         // q^{2n+3}
    cos_r_.push_back(-(sqrt_q_ * even_pow) / ((1.0 - a) * (1.0 - b)));
    sin_r_.push_back(-(sqrt_q_ * a) / ((1.0 - b) * (1.0 - c)));
    even_pow *= q2;
  }
}

const mp::BigFloat* QKernel::tabulated_ratio(SeriesKind kind, std::size_t n) const noexcept {
  const std::vector<mp::BigFloat>* t = &sin_r_;
  if (kind == SeriesKind::exp_q) t = &exp_r_;
  if (kind == SeriesKind::cosine) t = &cos_r_;
  return n < t->size() ? &(*t)[n] : nullptr;
}

void QKernel::ratio(SeriesKind kind, std::size_t n, mp::BigFloat& out) const {
  if (const mp::BigFloat* p = tabulated_ratio(kind, n)) {
    out = *p;
    return;
  }
  const long ln = static_cast<long>(n);
  switch (kind) {
    case SeriesKind::exp_q: {
      out = mp::pow(sqrt_q_, ln) / (1.0 - mp::pow(q_, ln + 1));
      return;
    }
    case SeriesKind::cosine: {
      const mp::BigFloat a = mp::pow(q_, 2 * ln + 1);
      out = -(a / sqrt_q_) / ((1.0 - a) * (1.0 - a * q_));
      return;
    }
    case SeriesKind::sine:
    case SeriesKind::sine_prime: {
      const mp::BigFloat b = mp::pow(q_, 2 * ln + 2);
      out = -(b / sqrt_q_) / ((1.0 - b) * (1.0 - b * q_));
      return;
    }
  }
}

namespace {

void round_to(mp::BigFloat& v, mp::Bits b) { v.set_bits(b); }
void round_to(mp::BigComplex& v, mp::Bits b) {
  v.re.set_bits(b);
  v.im.set_bits(b);
}

}  // namespace

template <class V>
SeriesValue<V> QKernel::run(SeriesKind kind, const V& z, std::size_t max_terms) const {
  V zz = z;
  round_to(zz, bits_);
  V w = inner_argument(kind, zz);
  round_to(w, bits_);
  const double l2z = detail::log2_abs(zz);
  const PeakEstimate pk = estimate_peak(kind, q_double_, l2z);

  auto ratio_at = [this, kind](std::size_t n, mp::BigFloat& scratch) -> const mp::BigFloat& {
    if (const mp::BigFloat* p = tabulated_ratio(kind, n)) return *p;
    ratio(kind, n, scratch);
    return scratch;
  };
  auto weight = [kind](std::size_t n) { return kind_weight(kind, n); };
  detail::RunResult<V> r = detail::run_mp<V>(w, ratio_at, weight, pk.index, bits_, max_terms, to_string(kind));

  SeriesValue<V> out;
  const double l2sum = detail::log2_abs(r.sum);
  if (kind == SeriesKind::sine) {
    V pref = zz;
    pref *= mp::BigFloat(1.0, bits_) / one_minus_q_;
    out.value = pref * r.sum;
  } else if (kind == SeriesKind::sine_prime) {
    out.value = r.sum;
    out.value *= mp::BigFloat(1.0, bits_) / one_minus_q_;
  } else {
    out.value = std::move(r.sum);
  }
  out.terms_used = r.terms;
  out.bits = bits_;
  out.backend = Backend::multiprecision;
  fill_telemetry(out, r.log2_peak, l2sum, log2_prefactor(kind, q_double_, l2z));
  return out;
}

SeriesValue<mp::BigFloat> QKernel::eval(SeriesKind kind, const mp::BigFloat& z, std::size_t max_terms) const {
  return run(kind, z, max_terms);
}

SeriesValue<mp::BigComplex> QKernel::eval(SeriesKind kind, const mp::BigComplex& z, std::size_t max_terms) const {
  return run(kind, z, max_terms);
}

// ---------------------------------------------------------------------------
// KernelFamily

namespace {

mp::Bits bucket_bits(std::size_t i) {
  // sqrt(2) spacing keeps the over-provisioning below ~41%.
  return round_bits(128.0 * std::exp2(static_cast<double>(i) / 2.0));
}

}  // namespace

KernelFamily::KernelFamily(double q) : q_(q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("KernelFamily: q must lie in (0, 1)");
}

const QKernel& KernelFamily::at_least(mp::Bits bits) const {
  std::size_t i = 0;
  while (bucket_bits(i) < bits) ++i;
  std::lock_guard<std::mutex> lock(mutex_);
  while (kernels_.size() <= i) kernels_.push_back(nullptr);
  if (!kernels_[i]) kernels_[i] = std::make_unique<QKernel>(q_, bucket_bits(i), 160);
  return *kernels_[i];
}

namespace {

template <class M>
SeriesValue<M> family_abs(const KernelFamily& fam, SeriesKind kind, const M& z, double abs_log2) {
  const double l2z = detail::log2_abs(z);
  const double peak = estimate_peak(kind, fam.q(), l2z).log2_peak + log2_prefactor(kind, fam.q(), l2z);
  const double bits = std::max(64.0, peak - abs_log2 + 24.0);
  return fam.at_least(round_bits(bits)).eval(kind, z);
}

template <class M>
SeriesValue<M> family_rel(const KernelFamily& fam, SeriesKind kind, const M& z, double rel_bits) {
  const double l2z = detail::log2_abs(z);
  double bits = std::max(64.0, estimate_peak(kind, fam.q(), l2z).log2_peak + rel_bits + 24.0);
  for (int round = 0;; ++round) {
    SeriesValue<M> r = fam.at_least(round_bits(bits)).eval(kind, z);
    if (round >= 8) return r;
    if (!std::isfinite(r.log2_cancellation)) {
      // Zero at this precision: the value sits below the rounding noise.
      bits = 2.0 * static_cast<double>(r.bits);
      continue;
    }
    const double need = r.log2_cancellation + rel_bits + 12.0;
    if (static_cast<double>(r.bits) >= need) return r;
    bits = r.log2_cancellation + rel_bits + 24.0;
  }
}

}  // namespace

SeriesValue<mp::BigFloat> KernelFamily::eval_abs(SeriesKind kind, const mp::BigFloat& z, double abs_log2) const {
  return family_abs(*this, kind, z, abs_log2);
}
SeriesValue<mp::BigComplex> KernelFamily::eval_abs(SeriesKind kind, const mp::BigComplex& z,
                                                   double abs_log2) const {
  return family_abs(*this, kind, z, abs_log2);
}
SeriesValue<mp::BigFloat> KernelFamily::eval_rel(SeriesKind kind, const mp::BigFloat& z, double rel_bits) const {
  return family_rel(*this, kind, z, rel_bits);
}
SeriesValue<mp::BigComplex> KernelFamily::eval_rel(SeriesKind kind, const mp::BigComplex& z,
                                                   double rel_bits) const {
  return family_rel(*this, kind, z, rel_bits);
}

// ---------------------------------------------------------------------------
// Third Jackson q-Bessel function

namespace {

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

void check_bessel_args(double nu, double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("jackson_bessel3: base q must lie in (0, 1)");
  if (!std::isfinite(nu)) throw DomainError("jackson_bessel3: nu must be finite");
  if (is_integer(nu) && nu < 0.0) throw DomainError("jackson_bessel3: negative integer order is not supported");
}

// Sequential double ratios -q^{n+1} / ((1 - b q^n)(1 - q^{n+1})), b = q^{nu+1}.
class BesselRatios {
 public:
  BesselRatios(double nu, double q) : q_(q), b_(std::pow(q, nu + 1.0)) {}
  double operator()(std::size_t) {
    const double r = -(q_ * p_) / ((1.0 - b_ * p_) * (1.0 - q_ * p_));
    p_ *= q_;
    return r;
  }

 private:
  double q_;
  double b_;
  double p_ = 1.0;
};

PeakEstimate bessel_peak(double nu, double q, double log2_abs_z) {
  BesselRatios ratios(nu, q);
  const double b = std::pow(q, nu + 1.0);
  PeakEstimate pk;
  double cum = 0.0;
  double bq = b;
  for (std::size_t n = 0; n < 10000000; ++n) {
    if (cum > pk.log2_peak) {
      pk.log2_peak = cum;
      pk.index = n;
    }
    const double lr = std::log2(std::fabs(ratios(n))) + 2.0 * log2_abs_z;
    // Beyond b q^n < 1/2 the ratio magnitudes decrease monotonically.
    if (lr < 0.0 && bq < 0.5) break;
    cum += lr;
    bq *= q;
  }
  return pk;
}

template <class M>
detail::RunResult<M> bessel_run_mp(const mp::BigFloat& nu, const M& z, const mp::BigFloat& q, mp::Bits bits,
                                   std::size_t peak_index, std::size_t max_terms) {
  M w = z * z;
  round_to(w, bits);
  mp::BigFloat qq = q;
  qq.set_bits(bits);
  const mp::BigFloat b = mp::pow(qq, nu + 1.0);
  mp::BigFloat p(1.0, bits);
  auto ratio = [&](std::size_t, mp::BigFloat& scratch) -> const mp::BigFloat& {
    scratch = -(qq * p) / ((1.0 - b * p) * (1.0 - qq * p));
    p *= qq;
    return scratch;
  };
  return detail::run_mp<M>(w, ratio, [](std::size_t) { return 1L; }, peak_index, bits, max_terms,
                           "jackson_bessel3");
}

mp::BigFloat bessel_prefactor_mp(const mp::BigFloat& nu, const mp::BigFloat& q, mp::Bits bits) {
  mp::BigFloat qq = q;
  qq.set_bits(bits);
  return q_pochhammer_inf(mp::pow(qq, nu + 1.0), qq) / q_pochhammer_inf(qq, qq);
}

mp::BigComplex int_power(const mp::BigComplex& z, long n, mp::Bits bits) {
  mp::BigComplex r(mp::BigFloat(1.0, bits), mp::BigFloat(0.0, bits));
  for (long i = 0; i < n; ++i) r *= z;
  return r;
}

template <class V>
SeriesValue<V> bessel_double_api(double nu, V z, double q, const QContext& ctx, Backend backend) {
  check_bessel_args(nu, q);
  const bool complex_arg = !std::is_same_v<V, double>;
  if (complex_arg && !is_integer(nu)) {
    throw DomainError("jackson_bessel3: complex argument needs a non-negative integer order");
  }
  if constexpr (std::is_same_v<V, double>) {
    if (!is_integer(nu) && z <= 0.0) throw DomainError("jackson_bessel3: non-integer order needs z > 0");
  }
  const double l2z = detail::log2_abs(z);
  const PeakEstimate pk = bessel_peak(nu, q, l2z);
  const char* who = "jackson_bessel3";

  SeriesValue<V> out;
  double cancel_hint = pk.log2_peak + 64.0;
  if (backend != Backend::multiprecision && pk.log2_peak < 1000.0) {
    Options opts = ctx.options();
    const V pref = std::pow(z, nu) * (q_pochhammer_inf(std::pow(q, nu + 1.0), q, opts) / q_pochhammer_inf(q, q, opts));
    detail::RunResult<V> r;
    auto one = [](std::size_t) { return 1.0; };
    if constexpr (std::is_same_v<V, double>) {
      if (backend == Backend::double_double) {
        r = detail::run_double<V, DoubleDoubleSum>(z * z, BesselRatios(nu, q), one, pk.index, ctx.series_tol(),
                                                   ctx.max_terms(), who);
      } else {
        r = detail::run_double<V, NeumaierSum>(z * z, BesselRatios(nu, q), one, pk.index, ctx.series_tol(),
                                               ctx.max_terms(), who);
      }
    } else {
      if (backend == Backend::double_double) {
        r = detail::run_double<V, ComplexSum<DoubleDoubleSum>>(z * z, BesselRatios(nu, q), one, pk.index,
                                                               ctx.series_tol(), ctx.max_terms(), who);
      } else {
        r = detail::run_double<V, ComplexSum<NeumaierSum>>(z * z, BesselRatios(nu, q), one, pk.index,
                                                           ctx.series_tol(), ctx.max_terms(), who);
      }
    }
    out.value = pref * r.sum;
    out.terms_used = r.terms;
    out.bits = backend == Backend::double_double ? 106 : 53;
    out.backend = backend == Backend::automatic ? Backend::compensated : backend;
    fill_telemetry(out, r.log2_peak, detail::log2_abs(r.sum), detail::log2_abs(pref));
    const bool finite = r.finite && detail::all_finite(out.value);
    if (backend != Backend::automatic) {
      if (!finite) throw OverflowError("jackson_bessel3: value exceeds the double range", out.log2_peak);
      return out;
    }
    if (finite && out.log2_cancellation <= kEscalateLog2) return out;
    if (finite && std::isfinite(out.log2_cancellation)) cancel_hint = out.log2_cancellation;
  } else if (backend != Backend::automatic && backend != Backend::multiprecision) {
    throw OverflowError("jackson_bessel3: series terms exceed the double range", pk.log2_peak);
  }

  double bits = 53.0 + kGuardBits + cancel_hint;
  for (int round = 0;; ++round) {
    const mp::Bits b = round_bits(bits);
    const mp::BigFloat nu_mp(nu, b);
    const mp::BigFloat q_mp(q, b);
    using M = typename MpOf<V>::type;
    const M zm = MpOf<V>::make(z, b);
    detail::RunResult<M> r = bessel_run_mp<M>(nu_mp, zm, q_mp, b, pk.index, ctx.max_terms());
    SeriesValue<M> tmp;
    const double l2sum = detail::log2_abs(r.sum);
    fill_telemetry(tmp, r.log2_peak, l2sum, 0.0);
    const double need = tmp.log2_cancellation + 53.0 + 24.0;
    if (static_cast<double>(b) >= need || round >= 6 || !std::isfinite(tmp.log2_cancellation)) {
      M value = std::move(r.sum);
      const mp::BigFloat pre = bessel_prefactor_mp(nu_mp, q_mp, b);
      if constexpr (std::is_same_v<V, double>) {
        value *= mp::pow(zm, nu_mp) * pre;
      } else {
        value *= int_power(zm, static_cast<long>(nu), b);
        value *= pre;
      }
      out.value = to_double_checked(value, who);
      out.terms_used = r.terms;
      fill_telemetry(out, r.log2_peak, l2sum, detail::log2_abs(value) - l2sum);
      out.bits = b;
      out.backend = Backend::multiprecision;
      return out;
    }
    bits = tmp.log2_cancellation + 53.0 + kGuardBits;
  }
}

}  // namespace

SeriesValue<double> jackson_bessel3(double nu, double z, double q, const QContext& ctx, Backend backend) {
  return bessel_double_api(nu, z, q, ctx, backend);
}

SeriesValue<std::complex<double>> jackson_bessel3(double nu, std::complex<double> z, double q, const QContext& ctx,
                                                  Backend backend) {
  return bessel_double_api(nu, z, q, ctx, backend);
}

mp::BigFloat jackson_bessel3_mp(const mp::BigFloat& nu, const mp::BigFloat& z, const mp::BigFloat& q) {
  check_bessel_args(nu.to_double(), q.to_double());
  if (z <= 0.0) throw DomainError("jackson_bessel3_mp: needs z > 0");
  const mp::Bits bits = std::max({nu.bits(), z.bits(), q.bits()});
  const PeakEstimate pk = bessel_peak(nu.to_double(), q.to_double(), z.log2_abs());
  detail::RunResult<mp::BigFloat> r = bessel_run_mp<mp::BigFloat>(nu, z, q, bits, pk.index, 10000000);
  return mp::pow(z, nu) * bessel_prefactor_mp(nu, q, bits) * r.sum;
}

}  // namespace qfourier
