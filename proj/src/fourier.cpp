#include "qfourier/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfourier/error.hpp"

namespace qfourier {

namespace {

mp::Bits sum_bits(double abs_log2) { return static_cast<mp::Bits>(std::max(128.0, std::ceil(-abs_log2) + 32.0)); }

void require_modes(const ZeroTable& zt, int K, const char* who) {
  if (K < 1) throw DomainError(std::string(who) + ": K must be at least 1");
  if (K > zt.size()) {
    throw PreconditionError(std::string(who) + ": zero table holds " + std::to_string(zt.size()) +
                            " modes, " + std::to_string(K) + " requested");
  }
}

int effective_depth(const GridFunction& f, const QContext& ctx) { return std::min(ctx.grid_depth(), f.depth()); }

}  // namespace

void FourierSeries::validate() const {
  if (!zeros) throw PreconditionError("FourierSeries: no zero table attached");
  if (b.size() != a.size() || mu.size() != a.size() || provenance.size() != a.size()) {
    throw PreconditionError("FourierSeries: coefficient arrays differ in length");
  }
  if (size() > zeros->size()) throw PreconditionError("FourierSeries: more modes than zeros");
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i].is_zero() || !mu[i].is_finite()) {
      throw PreconditionError("FourierSeries: mu_" + std::to_string(i + 1) + " is zero or not finite");
    }
  }
}

NodeModes node_modes(const ZeroTable& zt, int K, int depth) {
  require_modes(zt, K, "node_modes");
  if (depth < 1) throw DomainError("node_modes: depth must be positive");
  NodeModes out;
  out.q = zt.q();
  out.depth = depth;
  out.abs_log2 = depth * std::log2(zt.q()) - 64.0;
  const QKernel& ker = zt.kernel();
  const KernelFamily& fam = zt.family();
  out.c.resize(static_cast<std::size_t>(K));
  out.s.resize(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) {
    const mp::BigFloat& w = zt.entry(k).omega;
    mp::BigFloat zc = ker.sqrt_q() * w;
    mp::BigFloat zs = ker.q() * w;
    auto& cv = out.c[static_cast<std::size_t>(k - 1)];
    auto& sv = out.s[static_cast<std::size_t>(k - 1)];
    cv.reserve(static_cast<std::size_t>(depth));
    sv.reserve(static_cast<std::size_t>(depth));
    for (int n = 0; n < depth; ++n) {
      cv.push_back(fam.eval_abs(SeriesKind::cosine, zc, out.abs_log2).value);
      sv.push_back(fam.eval_abs(SeriesKind::sine, zs, out.abs_log2).value);
      zc *= ker.q();
      zs *= ker.q();
    }
  }
  return out;
}

mp::BigFloat mu_k(const ZeroTable& zt, int k) {
  const ZeroEntry& e = zt.entry(k);
  return (1.0 - zt.q_mp()) * e.c_half * e.s_prime;
}

ModeIntegrals mode_integrals(const GridFunction& f, int k, const NodeModes& modes) {
  if (k < 1 || k > modes.size()) throw DomainError("mode_integrals: mode index outside the node table");
  if (std::fabs(f.q() - modes.q) > 0.0) throw PreconditionError("mode_integrals: grid and zero table differ in q");
  const int depth = std::min(f.depth(), modes.depth);
  const mp::Bits bits = sum_bits(modes.abs_log2);
  const mp::BigFloat q(modes.q, bits);
  mp::BigFloat qn(1.0, bits);
  mp::BigFloat ic(0.0, bits);
  mp::BigFloat is(0.0, bits);
  const auto& cv = modes.c[static_cast<std::size_t>(k - 1)];
  const auto& sv = modes.s[static_cast<std::size_t>(k - 1)];
  for (int n = 0; n < depth; ++n) {
    const double fp = f.pos(n + 1);
    const double fm = f.neg(n + 1);
    // C_q is even and S_q odd, so each pair of nodes folds into one term.
    ic += qn * cv[static_cast<std::size_t>(n)] * mp::BigFloat(fp + fm, 64);
    if (fp != fm) is += qn * sv[static_cast<std::size_t>(n)] * (mp::BigFloat(fp, 64) - mp::BigFloat(fm, 64));
    qn *= q;
  }
  const mp::BigFloat scale = 1.0 - q;
  return {ic * scale, is * scale};
}

mp::BigFloat coeff_a0_mp(const GridFunction& f, const QContext& ctx) {
  const int depth = effective_depth(f, ctx);
  const mp::Bits bits = 192;
  const mp::BigFloat q(f.q(), bits);
  mp::BigFloat qn(1.0, bits);
  mp::BigFloat s(0.0, bits);
  for (int n = 0; n < depth; ++n) {
    s += qn * (mp::BigFloat(f.pos(n + 1), 64) + mp::BigFloat(f.neg(n + 1), 64));
    qn *= q;
  }
  return s * (1.0 - q);
}

double coeff_a0(const GridFunction& f, const QContext& ctx) { return coeff_a0_mp(f, ctx).to_double(); }

double coeff_ak(const GridFunction& f, int k, const ZeroTable& zt, const QContext& ctx) {
  require_modes(zt, k, "coeff_ak");
  const NodeModes modes = node_modes(zt, k, effective_depth(f, ctx));
  return (mode_integrals(f, k, modes).cosine / mu_k(zt, k)).to_double();
}

double coeff_bk(const GridFunction& f, int k, const ZeroTable& zt, const QContext& ctx) {
  require_modes(zt, k, "coeff_bk");
  const NodeModes modes = node_modes(zt, k, effective_depth(f, ctx));
  return (zt.kernel().sqrt_q() * mode_integrals(f, k, modes).sine / mu_k(zt, k)).to_double();
}

FourierSeries compute_series(const GridFunction& f, std::shared_ptr<const ZeroTable> zt, int K,
                             const QContext& ctx) {
  if (!zt) throw PreconditionError("compute_series: no zero table");
  require_modes(*zt, K, "compute_series");
  if (f.q() != zt->q() || f.q() != ctx.q()) throw PreconditionError("compute_series: q mismatch");
  const NodeModes modes = node_modes(*zt, K, effective_depth(f, ctx));
  FourierSeries fs;
  fs.q = zt->q();
  fs.zeros = zt;
  fs.a0 = coeff_a0_mp(f, ctx);
  fs.a0_provenance = "quadrature";
  for (int k = 1; k <= K; ++k) {
    const ModeIntegrals mi = mode_integrals(f, k, modes);
    mp::BigFloat mu = mu_k(*zt, k);
    fs.a.push_back(mi.cosine / mu);
    fs.b.push_back(zt->kernel().sqrt_q() * mi.sine / mu);
    fs.mu.push_back(std::move(mu));
    fs.provenance.emplace_back("quadrature");
  }
  fs.validate();
  return fs;
}

FourierSeries compute_series(const GridFunction& f, int K, const QContext& ctx) {
  auto zt = std::make_shared<const ZeroTable>(find_zeros(ctx, K));
  return compute_series(f, std::move(zt), K, ctx);
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

int floor_div2(int n) { return n >= 0 ? n / 2 : -((-n + 1) / 2); }

void closed_abs(FourierSeries& fs, const ZeroTable& zt, int K) {
  const mp::BigFloat& q = zt.q_mp();
  fs.a0 = 2.0 / (1.0 + q);
  for (int k = 1; k <= K; ++k) {
    const ZeroEntry& e = zt.entry(k);
    const mp::BigFloat& c = e.c_half;
    fs.a.push_back(-2.0 * (1.0 - q) * (1.0 - c) / (zt.kernel().sqrt_q() * e.omega * e.omega * c * e.s_prime));
    fs.b.emplace_back(0.0, zt.bits());
  }
}

void closed_sign(FourierSeries& fs, const ZeroTable& zt, int K) {
  fs.a0 = mp::BigFloat(0.0, zt.bits());
  for (int k = 1; k <= K; ++k) {
    const ZeroEntry& e = zt.entry(k);
    fs.a.emplace_back(0.0, zt.bits());
    fs.b.push_back(2.0 * (1.0 - e.c_half) / (e.omega * e.c_half * e.s_prime));
  }
}

void closed_step(FourierSeries& fs, const ZeroTable& zt, int K, double a) {
  const int na = step_index(zt.q(), a);
  const QKernel& ker = zt.kernel();
  const mp::BigFloat qna = mp::pow(zt.q_mp(), static_cast<long>(na));
  fs.a0 = -2.0 * qna;
  for (int k = 1; k <= K; ++k) {
    const ZeroEntry& e = zt.entry(k);
    const mp::BigFloat den = e.omega * e.c_half * e.s_prime;
    const mp::BigFloat s_na = ker.sq(qna * e.omega);
    const mp::BigFloat c_na = ker.cq(ker.sqrt_q() * qna * e.omega);
    fs.a.push_back(-2.0 * s_na / den);
    fs.b.push_back(2.0 * (c_na - e.c_half) / den);
  }
}

void closed_monomial(FourierSeries& fs, const ZeroTable& zt, int K, int m) {
  const mp::BigFloat& q = zt.q_mp();
  const mp::BigFloat sq = zt.kernel().sqrt_q();
  const bool even = m % 2 == 0;
  auto poch = [&](int n) { return q_pochhammer(q, q, static_cast<std::size_t>(n)); };
  const mp::BigFloat qm = poch(m);
  fs.a0 = even ? 2.0 * (1.0 - q) / (1.0 - mp::pow(q, static_cast<long>(m + 1))) : mp::BigFloat(0.0, zt.bits());
  for (int k = 1; k <= K; ++k) {
    const ZeroEntry& e = zt.entry(k);
    const mp::BigFloat& w = e.omega;
    mp::BigFloat ak(0.0, zt.bits());
    mp::BigFloat bk(0.0, zt.bits());
    if (even) {
      mp::BigFloat s(0.0, zt.bits());
      for (int i = 0; i <= floor_div2(m - 2); ++i) {
        // q^{(i+1)(i-m+1/2)} = q^{(i+1)(i-m)} * q^{(i+1)/2}
        mp::BigFloat t = mp::pow(q, static_cast<long>((i + 1) * (i - m))) * mp::pow(sq, static_cast<long>(i + 1));
        t /= mp::pow(w, static_cast<long>(2 * i + 2)) * poch(m - 1 - 2 * i);
        if (i % 2) s -= t; else s += t;
      }
      ak = 2.0 * qm * s / e.s_prime;
    } else {
      mp::BigFloat s(0.0, zt.bits());
      for (int i = 0; i <= floor_div2(m - 1); ++i) {
        // q^{(i+1)(i-m-1/2)} = q^{(i+1)(i-m-1)} * q^{(i+1)/2}
        mp::BigFloat t =
            mp::pow(q, static_cast<long>((i + 1) * (i - m - 1))) * mp::pow(sq, static_cast<long>(i + 1));
        t /= mp::pow(w, static_cast<long>(2 * i + 1)) * poch(m - 2 * i);
        if (i % 2) s -= t; else s += t;
      }
      bk = -2.0 * qm * sq * s / e.s_prime;
    }
    fs.a.push_back(std::move(ak));
    fs.b.push_back(std::move(bk));
  }
}

}  // namespace

FourierSeries closed_form_series(const StockFunction& f, std::shared_ptr<const ZeroTable> zt, int K) {
  if (!zt) throw PreconditionError("closed_form_series: no zero table");
  require_modes(*zt, K, "closed_form_series");
  FourierSeries fs;
  fs.q = zt->q();
  fs.zeros = zt;
  switch (f.kind) {
    case StockKind::abs:
      closed_abs(fs, *zt, K);
      break;
    case StockKind::sign:
      closed_sign(fs, *zt, K);
      break;
    case StockKind::step:
      closed_step(fs, *zt, K, f.a);
      break;
    case StockKind::monomial:
      if (f.m < 0) throw DomainError("closed_form_series: m must be non-negative");
      closed_monomial(fs, *zt, K, f.m);
      break;
  }
  // Exact zeros (odd/even symmetry) are stored as +0.
  for (auto* v : {&fs.a, &fs.b}) {
    for (mp::BigFloat& c : *v) {
      if (c.is_zero()) c = mp::BigFloat(0.0, zt->bits());
    }
  }
  if (fs.a0.is_zero()) fs.a0 = mp::BigFloat(0.0, zt->bits());
  const std::string tag = "closed_form:" + f.name();
  fs.a0_provenance = tag;
  for (int k = 1; k <= K; ++k) {
    fs.mu.push_back(mu_k(*zt, k));
    fs.provenance.push_back(tag);
  }
  fs.validate();
  return fs;
}

SeriesComparison compare_series(const FourierSeries& candidate, const FourierSeries& reference, double rel_tol,
                                double abs_floor) {
  const int K = std::min(candidate.size(), reference.size());
  SeriesComparison out;
  out.agree = true;
  auto visit = [&](const mp::BigFloat& x, const mp::BigFloat& y, int k) {
    const double d = mp::abs(x - y).to_double();
    const double ay = mp::abs(y).to_double();
    if (ay <= abs_floor) {
      out.max_abs_small = std::max(out.max_abs_small, d);
      if (d > abs_floor) {
        out.agree = false;
        out.worst_k = k;
      }
      return;
    }
    const double r = d / ay;
    if (r > out.max_rel) {
      out.max_rel = r;
      out.worst_k = k;
    }
    if (r > rel_tol) out.agree = false;
  };
  visit(candidate.a0, reference.a0, 0);
  for (int k = 1; k <= K; ++k) {
    const std::size_t i = static_cast<std::size_t>(k - 1);
    visit(candidate.a[i], reference.a[i], k);
    visit(candidate.b[i], reference.b[i], k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partial sums

namespace {

constexpr double kTermAbsLog2 = -72.0;

int modes_used(const FourierSeries& fs, int K_used) {
  if (K_used < 0) return fs.size();
  if (K_used > fs.size()) throw DomainError("partial sum: K_used exceeds the number of coefficients");
  return K_used;
}

double abs_target(const mp::BigFloat& coeff) { return kTermAbsLog2 - coeff.log2_abs(); }

}  // namespace

mp::BigFloat eval_partial_sum_mp(const FourierSeries& fs, const mp::BigFloat& x, int K_used) {
  fs.validate();
  const int K = modes_used(fs, K_used);
  const ZeroTable& zt = *fs.zeros;
  mp::BigFloat sum = mp::BigFloat(0.5, 128) * fs.a0;
  for (int k = 1; k <= K; ++k) {
    const ZeroEntry& e = zt.entry(k);
    const mp::BigFloat& ak = fs.a[static_cast<std::size_t>(k - 1)];
    const mp::BigFloat& bk = fs.b[static_cast<std::size_t>(k - 1)];
    if (!ak.is_zero()) {
      const mp::BigFloat z = x * (zt.kernel().sqrt_q() * e.omega);
      sum += zt.family().eval_abs(SeriesKind::cosine, z, abs_target(ak)).value * ak;
    }
    if (!bk.is_zero()) {
      const mp::BigFloat z = x * (zt.q_mp() * e.omega);
      sum += zt.family().eval_abs(SeriesKind::sine, z, abs_target(bk)).value * bk;
    }
  }
  return sum;
}

mp::BigComplex eval_partial_sum_mp(const FourierSeries& fs, const mp::BigComplex& x, int K_used) {
  fs.validate();
  const int K = modes_used(fs, K_used);
  const ZeroTable& zt = *fs.zeros;
  mp::BigComplex sum(mp::BigFloat(0.5 * fs.a0), mp::BigFloat(0.0, 128));
  for (int k = 1; k <= K; ++k) {
    const ZeroEntry& e = zt.entry(k);
    const mp::BigFloat& ak = fs.a[static_cast<std::size_t>(k - 1)];
    const mp::BigFloat& bk = fs.b[static_cast<std::size_t>(k - 1)];
    if (!ak.is_zero()) {
      const mp::BigComplex z = x * (zt.kernel().sqrt_q() * e.omega);
      sum += zt.family().eval_abs(SeriesKind::cosine, z, abs_target(ak)).value * ak;
    }
    if (!bk.is_zero()) {
      const mp::BigComplex z = x * (zt.q_mp() * e.omega);
      sum += zt.family().eval_abs(SeriesKind::sine, z, abs_target(bk)).value * bk;
    }
  }
  return sum;
}

namespace {

[[noreturn]] void throw_overflow(int k, double log2_mag) {
  throw OverflowError("partial sum leaves the double range at mode k=" + std::to_string(k), log2_mag);
}

}  // namespace

double eval_partial_sum(const FourierSeries& fs, double x, int K_used) {
  const mp::BigFloat v = eval_partial_sum_mp(fs, mp::BigFloat(x, 64), K_used);
  const double l2 = v.log2_abs();
  if (l2 > 1023.0) {
    // Find the first mode that pushes the partial sum out of range.
    const int K = modes_used(fs, K_used);
    for (int k = 1; k <= K; ++k) {
      if (eval_partial_sum_mp(fs, mp::BigFloat(x, 64), k).log2_abs() > 1023.0) throw_overflow(k, l2);
    }
    throw_overflow(K, l2);
  }
  return v.to_double();
}

std::complex<double> eval_partial_sum(const FourierSeries& fs, std::complex<double> x, int K_used) {
  const mp::BigComplex v = eval_partial_sum_mp(fs, mp::BigComplex(x, 64), K_used);
  const double l2 = v.log2_abs();
  if (l2 > 1023.0) {
    const int K = modes_used(fs, K_used);
    for (int k = 1; k <= K; ++k) {
      if (eval_partial_sum_mp(fs, mp::BigComplex(x, 64), k).log2_abs() > 1023.0) throw_overflow(k, l2);
    }
    throw_overflow(K, l2);
  }
  return v.to_complex();
}

// ---------------------------------------------------------------------------
// Integration-by-parts forms of the coefficient integrals

namespace {

struct NodeSums {
  mp::BigFloat cosine;  // int f C_q(q^{1/2} omega t)
  mp::BigFloat sine;    // int f S_q(q omega t)
};

// Jackson sums of g against the k-th modes, g sampled at +-q^n.
NodeSums node_sums(const std::function<double(double)>& g, int k, const NodeModes& modes, bool want_sine) {
  const mp::Bits bits = sum_bits(modes.abs_log2);
  const mp::BigFloat q(modes.q, bits);
  mp::BigFloat qn(1.0, bits);
  mp::BigFloat c(0.0, bits);
  mp::BigFloat s(0.0, bits);
  const auto& cv = modes.c[static_cast<std::size_t>(k - 1)];
  const auto& sv = modes.s[static_cast<std::size_t>(k - 1)];
  double t = 1.0;
  for (int n = 0; n < modes.depth; ++n) {
    const double gp = g(t);
    const double gm = g(-t);
    if (want_sine) {
      s += qn * sv[static_cast<std::size_t>(n)] * (mp::BigFloat(gp, 64) - mp::BigFloat(gm, 64));
    } else {
      c += qn * cv[static_cast<std::size_t>(n)] * (mp::BigFloat(gp, 64) + mp::BigFloat(gm, 64));
    }
    qn *= q;
    t *= modes.q;
  }
  return {c * (1.0 - q), s * (1.0 - q)};
}

}  // namespace

IdentityCheck check_cosine_by_parts(const ScalarFunction& f, int k, const NodeModes& modes, const ZeroTable& zt) {
  if (k < 1 || k > modes.size()) throw DomainError("check_cosine_by_parts: mode index outside the node table");
  const double q = modes.q;
  const double sq = std::sqrt(q);
  const double d = sq - 1.0 / sq;
  auto g = [&](double t) { return (f(q * t) - f(t)) / (t * d); };
  const mp::BigFloat lhs = node_sums(f.fn, k, modes, false).cosine;
  const mp::BigFloat inner = node_sums(g, k, modes, true).sine;
  const mp::BigFloat pref = -(1.0 - zt.q_mp()) / (zt.kernel().sqrt_q() * zt.entry(k).omega);
  const mp::BigFloat rhs = pref * inner;
  IdentityCheck out;
  out.lhs = lhs.to_double();
  out.rhs = rhs.to_double();
  out.residual = mp::abs(lhs - rhs).to_double();
  out.scale = std::max({std::fabs(out.lhs), std::fabs(out.rhs), mp::abs(pref).to_double() * mp::abs(inner).to_double(),
                        std::numeric_limits<double>::min()});
  return out;
}

IdentityCheck check_sine_by_parts(const ScalarFunction& f, int k, const NodeModes& modes, const ZeroTable& zt) {
  if (k < 1 || k > modes.size()) throw DomainError("check_sine_by_parts: mode index outside the node table");
  const double q = modes.q;
  const double sq = std::sqrt(q);
  const double d = sq - 1.0 / sq;
  auto g = [&](double t) { return (f(t) - f(t / q)) / (t * d); };
  const mp::BigFloat lhs = node_sums(f.fn, k, modes, true).sine;
  const mp::BigFloat inner = node_sums(g, k, modes, false).cosine;
  const ZeroEntry& e = zt.entry(k);
  const mp::BigFloat boundary = zt.kernel().sqrt_q() * (f(1.0 / q) - f(-1.0 / q)) * e.c_half;
  const mp::BigFloat pref = (zt.q_mp() - 1.0) / (zt.q_mp() * e.omega);
  const mp::BigFloat rhs = pref * (boundary - inner);
  IdentityCheck out;
  out.lhs = lhs.to_double();
  out.rhs = rhs.to_double();
  out.residual = mp::abs(lhs - rhs).to_double();
  const double p = mp::abs(pref).to_double();
  out.scale = std::max({std::fabs(out.lhs), std::fabs(out.rhs), p * mp::abs(boundary).to_double(),
                        p * mp::abs(inner).to_double(), std::numeric_limits<double>::min()});
  return out;
}

}  // namespace qfourier
