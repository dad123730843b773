#include "qfourier/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qfourier/error.hpp"

namespace qfourier {

namespace {

constexpr mp::Bits kScanBits = 128;

// Sign of S_q(x) with at least 24 trustworthy leading bits behind it.
int certified_sign(const KernelFamily& fam, const mp::BigFloat& x) {
  const auto v = fam.eval_rel(SeriesKind::sine, x, 24.0);
  if (v.value.is_zero()) return 0;
  const double slack = v.log2_peak - static_cast<double>(v.bits) + 12.0;
  if (v.value.log2_abs() <= slack) return 0;
  return v.value.sign();
}

mp::BigFloat scan_start(double q) {
  // S_q > 0 on (0, x*): past x* the terms of the S_q series stop decreasing
  // from the first one.
  const mp::BigFloat qq(q, kScanBits);
  const mp::BigFloat x_star =
      mp::sqrt((1.0 - qq * qq) * (1.0 - qq * qq * qq) / mp::pow(qq, mp::BigFloat(1.5, kScanBits)));
  const mp::BigFloat q34 = mp::pow(qq, mp::BigFloat(0.75, kScanBits));
  return q34 < x_star ? q34 : x_star;
}

}  // namespace

const char* to_string(BracketSource s) noexcept { return s == BracketSource::theorem_a ? "theorem_A" : "scan"; }

bool alpha_defined(double q, int k) {
  if (k < 1 || !(q > 0.0 && q < 1.0)) return false;
  const double q2k = std::pow(q, 2 * k);
  return q * q2k / (1.0 - q2k) < 1.0;
}

double alpha_k(double q, int k) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("alpha_k: q must lie in (0, 1)");
  if (k < 1) throw DomainError("alpha_k: k must be positive");
  const double q2k = std::pow(q, 2 * k);
  const double x = q * q2k / (1.0 - q2k);
  if (!(x < 1.0)) {
    throw DomainError("alpha_k: log argument 1 - q^(2k+1)/(1-q^(2k)) is not positive for q=" + std::to_string(q) +
                      ", k=" + std::to_string(k));
  }
  return std::log1p(-x) / (2.0 * std::log(q));
}

mp::BigFloat alpha_k_mp(const mp::BigFloat& q, int k) {
  if (k < 1) throw DomainError("alpha_k: k must be positive");
  const mp::BigFloat q2k = mp::pow(q, static_cast<long>(2 * k));
  const mp::BigFloat x = q * q2k / (1.0 - q2k);
  if (!(x < 1.0)) throw DomainError("alpha_k: log argument is not positive");
  return mp::log1p(-x) / (2.0 * mp::log(q));
}

double beta0() {
  auto g = [](double q) {
    const double a = 1.0 - q * q;
    return a * a - q * q * q;
  };
  double lo = 0.0;  // g > 0
  double hi = 1.0;  // g < 0
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Bracket theorem_a_bracket(double q, int k) {
  const double a = alpha_k(q, k);
  Bracket b;
  b.lo = std::pow(q, -k + a + 0.25);
  b.hi = std::pow(q, -k + 0.25);
  b.valid = q < beta0();
  return b;
}

BracketMp theorem_a_bracket_mp(const mp::BigFloat& q, int k) {
  const mp::BigFloat a = alpha_k_mp(q, k);
  const mp::BigFloat e = mp::BigFloat(0.25 - k, q.bits());
  BracketMp b;
  b.lo = mp::pow(q, e + a);
  b.hi = mp::pow(q, e);
  b.valid = q.to_double() < beta0();
  return b;
}

mp::Bits zero_table_bits(double q, int K) {
  const double log2z = -(K + 1) * std::log2(q);
  const double peak = estimate_peak(SeriesKind::cosine, q, log2z).log2_peak;
  const double bits = std::max(128.0, 96.0 + 2.2 * peak);
  return static_cast<mp::Bits>(std::ceil(bits / 64.0) * 64.0);
}

namespace {

std::size_t table_terms(double q, int K, mp::Bits bits) {
  const double tail = std::sqrt(static_cast<double>(bits) / -std::log2(q));
  return static_cast<std::size_t>(3 * (K + 1) + tail + 16);
}

}  // namespace

ZeroTable::ZeroTable(double q, mp::Bits bits, int K)
    : q_(q),
      bits_(bits),
      kernel_(std::make_shared<QKernel>(q, bits, table_terms(q, K, bits))),
      family_(std::make_shared<KernelFamily>(q)) {}

ZeroTable::ZeroTable(double q, mp::Bits bits, std::vector<ZeroEntry> entries)
    : q_(q),
      bits_(bits),
      kernel_(std::make_shared<QKernel>(q, bits, table_terms(q, static_cast<int>(entries.size()), bits))),
      family_(std::make_shared<KernelFamily>(q)),
      entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    ZeroEntry& e = entries_[i];
    if (e.k != static_cast<int>(i) + 1) throw DomainError("ZeroTable: entries must be numbered 1..K in order");
    e.omega.set_bits(bits_);
    fill_cache(e);
  }
}

const ZeroEntry& ZeroTable::entry(int k) const {
  if (k < 1 || k > size()) {
    throw DomainError("ZeroTable: index " + std::to_string(k) + " outside 1.." + std::to_string(size()));
  }
  return entries_[static_cast<std::size_t>(k - 1)];
}

void ZeroTable::fill_cache(ZeroEntry& e) const {
  const QKernel& ker = *kernel_;
  e.omega_d = e.omega.to_double();
  const auto ch = ker.eval(SeriesKind::cosine, ker.sqrt_q() * e.omega);
  e.c_half = ch.value;
  e.c_at = ker.cq(e.omega);
  e.s_prime = ker.sq_prime(e.omega);
  if (static_cast<double>(bits_) - ch.log2_cancellation < 80.0) e.precision_warning = true;
  e.eps = (mp::log(e.omega) / mp::log(ker.q()) + (e.k - 0.25)).to_double();
  e.valid = q_ < beta0();
  if (alpha_defined(q_, e.k)) {
    e.alpha = alpha_k(q_, e.k);
    const BracketMp br = theorem_a_bracket_mp(ker.q(), e.k);
    e.in_theorem_a = br.lo < e.omega && e.omega < br.hi;
  } else {
    e.alpha = std::numeric_limits<double>::quiet_NaN();
    e.in_theorem_a = false;
  }
}

bool ZeroTable::verify_brackets() const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const ZeroEntry& e = entries_[i];
    const int sl = certified_sign(*family_, mp::BigFloat(e.lo, kScanBits));
    const int sh = certified_sign(*family_, mp::BigFloat(e.hi, kScanBits));
    if (sl * sh >= 0) return false;
    if (!(e.lo <= e.omega_d && e.omega_d <= e.hi)) return false;
    if (i + 1 < entries_.size() && !(e.hi < entries_[i + 1].lo)) return false;
  }
  return true;
}

ZeroTable find_zeros(const QContext& ctx, int K) {
  if (K < 1) throw DomainError("find_zeros: K must be at least 1");
  const double q = ctx.q();
  const mp::Bits bits = zero_table_bits(q, K);
  ZeroTable zt(q, bits, K);
  const KernelFamily& fam = *zt.family_;
  const QKernel& ker = *zt.kernel_;

  const mp::BigFloat q_scan(q, kScanBits);
  const mp::BigFloat step = mp::pow(q_scan, mp::BigFloat(-0.125, kScanBits));
  const double tol = std::max(ctx.root_tol(), 0x1p-100) / 2.0;

  mp::BigFloat prev = scan_start(q);
  int prev_sign = certified_sign(fam, prev);
  if (prev_sign == 0) throw Error("find_zeros: cannot certify the sign of S_q at the scan start");

  for (int k = 1; k <= K; ++k) {
    ZeroEntry e;
    e.k = k;
    mp::BigFloat lo;
    mp::BigFloat hi;
    bool have = false;

    if (alpha_defined(q, k)) {
      BracketMp br = theorem_a_bracket_mp(q_scan, k);
      if (br.lo > prev) {
        const int sl = certified_sign(fam, br.lo);
        const int sh = certified_sign(fam, br.hi);
        // Outside the theorem's range also demand no sign change since the
        // previous zero, so the bracket cannot belong to a later zero.
        if (sl != 0 && sh != 0 && sl != sh && (br.valid || sl == prev_sign)) {
          lo = br.lo;
          hi = br.hi;
          e.source = BracketSource::theorem_a;
          have = true;
        }
      }
    }

    if (!have) {
      mp::BigFloat x = prev;
      int sx = prev_sign;
      for (std::size_t s = 0;; ++s) {
        if (s >= ctx.max_terms()) {
          throw Error("find_zeros: scan for zero k=" + std::to_string(k) + " found no sign change in " +
                      std::to_string(ctx.max_terms()) + " steps");
        }
        mp::BigFloat y = x * step;
        y.set_bits(kScanBits);
        const int sy = certified_sign(fam, y);
        if (sy != 0 && sy != sx) {
          lo = x;
          hi = y;
          break;
        }
        if (sy != 0) sx = sy;
        x = std::move(y);
      }
      e.source = BracketSource::scan;
    }

    int s_lo = certified_sign(fam, lo);
    bool exact = false;
    while (hi - lo > lo * tol) {
      mp::BigFloat mid = (lo + hi) / 2.0;
      mid.set_bits(kScanBits);
      if (!(lo < mid && mid < hi)) break;
      const int sm = certified_sign(fam, mid);
      if (sm == 0) {
        lo = mid;
        hi = mid;
        exact = true;
        break;
      }
      (sm == s_lo ? lo : hi) = std::move(mid);
    }

    // Newton polish inside the certified bracket, up to the precision the
    // table kernel supports.
    mp::BigFloat x = (lo + hi) / 2.0;
    x.set_bits(bits);
    if (!exact) {
      mp::BigFloat prev_dx;
      for (int it = 0; it < 60; ++it) {
        const auto sv = ker.eval(SeriesKind::sine, x);
        const mp::BigFloat sp = ker.sq_prime(x);
        const mp::BigFloat dx = sv.value / sp;
        mp::BigFloat next = x - dx;
        // The bisection end points are only 128-bit accurate; a step past
        // one restarts from it.
        if (next < lo) next = lo;
        if (next > hi) next = hi;
        next.set_bits(bits);
        const double noise = sv.log2_peak - static_cast<double>(bits) + 8.0 - mp::abs(sp).log2_abs();
        const bool settled = dx.log2_abs() <= noise;
        const bool stalled = it > 2 && mp::abs(dx) > mp::abs(prev_dx) * 0.5;
        x = std::move(next);
        if (settled || stalled || dx.is_zero()) break;
        prev_dx = mp::abs(dx);
      }
    }

    e.omega = std::move(x);
    e.lo = lo.to_double(MPFR_RNDD);
    e.hi = hi.to_double(MPFR_RNDU);
    if (exact) {
      e.lo = std::nextafter(e.lo, 0.0);
      e.hi = std::nextafter(e.hi, std::numeric_limits<double>::infinity());
    }
    const int cl = certified_sign(fam, mp::BigFloat(e.lo, kScanBits));
    const int ch = certified_sign(fam, mp::BigFloat(e.hi, kScanBits));
    if (cl * ch >= 0) throw Error("find_zeros: stored bracket for k=" + std::to_string(k) + " lost its sign change");
    zt.fill_cache(e);

    prev = mp::BigFloat(e.hi, kScanBits);
    prev_sign = ch;
    zt.entries_.push_back(std::move(e));
  }
  return zt;
}

mp::BigFloat eps_mp(const ZeroTable& zt, int k) {
  const ZeroEntry& e = zt.entry(k);
  return mp::log(e.omega) / mp::log(zt.q_mp()) + (k - 0.25);
}

mp::BigFloat extract_Sk_mp(const ZeroTable& zt, int k) {
  const ZeroEntry& e = zt.entry(k);
  const mp::BigFloat d = mp::BigFloat(k - 0.5, zt.bits()) - eps_mp(zt, k);
  return (1.0 - zt.q_mp()) / 2.0 * mp::pow(zt.q_mp(), d * d) * e.s_prime;
}

mp::BigFloat extract_Rk_mp(const ZeroTable& zt, int k) {
  const ZeroEntry& e = zt.entry(k);
  const mp::BigFloat d = mp::BigFloat(k, zt.bits()) - eps_mp(zt, k);
  return mp::pow(zt.q_mp(), d * d) * e.c_at;
}

double extract_Sk(const ZeroTable& zt, int k) {
  const mp::BigFloat v = extract_Sk_mp(zt, k);
  if (v.log2_abs() >= 1024.0) throw OverflowError("extract_Sk", v.log2_abs());
  return v.to_double();
}

double extract_Rk(const ZeroTable& zt, int k) {
  const mp::BigFloat v = extract_Rk_mp(zt, k);
  if (v.log2_abs() >= 1024.0) throw OverflowError("extract_Rk", v.log2_abs());
  return v.to_double();
}

}  // namespace qfourier
