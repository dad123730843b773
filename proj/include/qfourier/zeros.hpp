#pragma once

// Positive zeros omega_k of S_q with certified sign-change brackets, and the
// asymptotic quantities alpha_k, eps_k, S_k, R_k built from them.

#include <memory>
#include <string>
#include <vector>

#include "qfourier/bigfloat.hpp"
#include "qfourier/qcore.hpp"
#include "qfourier/qtrig.hpp"

namespace qfourier {

enum class BracketSource { theorem_a, scan };

const char* to_string(BracketSource s) noexcept;

struct ZeroEntry {
  int k = 0;
  /// The zero at the table's working precision.
  mp::BigFloat omega;
  double omega_d = 0.0;
  /// Double bracket, rounded outward; S_q changes sign across it.
  double lo = 0.0;
  double hi = 0.0;
  /// NaN when the logarithm in alpha_k is undefined (q near 1, small k).
  double alpha = 0.0;
  /// omega = q^{-k + eps + 1/4}.
  double eps = 0.0;
  BracketSource source = BracketSource::scan;
  /// q < beta0: the analytic bracket is a theorem, not an advisory.
  bool valid = false;
  /// Strictly inside (q^{-k+alpha+1/4}, q^{-k+1/4}), decided at full precision.
  bool in_theorem_a = false;
  bool precision_warning = false;

  /// C_q(q^{1/2} omega), C_q(omega), S_q'(omega) at table precision.
  mp::BigFloat c_half;
  mp::BigFloat c_at;
  mp::BigFloat s_prime;
};

class ZeroTable {
 public:
  /// Rebuilds the cached mode values from `omega`; used when loading tables.
  ZeroTable(double q, mp::Bits bits, std::vector<ZeroEntry> entries);

  double q() const noexcept { return q_; }
  const mp::BigFloat& q_mp() const noexcept { return kernel_->q(); }
  int size() const noexcept { return static_cast<int>(entries_.size()); }
  mp::Bits bits() const noexcept { return bits_; }
  /// 1-based.
  const ZeroEntry& entry(int k) const;
  const std::vector<ZeroEntry>& entries() const noexcept { return entries_; }
  const QKernel& kernel() const noexcept { return *kernel_; }
  const KernelFamily& family() const noexcept { return *family_; }

  /// Re-evaluates S_q at every stored bracket end point.
  bool verify_brackets() const;

 private:
  friend ZeroTable find_zeros(const QContext& ctx, int K);
  ZeroTable(double q, mp::Bits bits, int K);
  void fill_cache(ZeroEntry& e) const;

  double q_;
  mp::Bits bits_;
  std::shared_ptr<const QKernel> kernel_;
  std::shared_ptr<const KernelFamily> family_;
  std::vector<ZeroEntry> entries_;
};

/// log(1 - q^{2k+1}/(1-q^{2k})) / (2 log q); DomainError when the argument
/// of the logarithm is not positive.
double alpha_k(double q, int k);
mp::BigFloat alpha_k_mp(const mp::BigFloat& q, int k);
bool alpha_defined(double q, int k);

/// Root of (1-q^2)^2 - q^3 in (0, 1).
double beta0();

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  bool valid = false;
};
struct BracketMp {
  mp::BigFloat lo;
  mp::BigFloat hi;
  bool valid = false;
};

/// (q^{-k+alpha_k+1/4}, q^{-k+1/4}); valid iff q < beta0.
Bracket theorem_a_bracket(double q, int k);
BracketMp theorem_a_bracket_mp(const mp::BigFloat& q, int k);

/// Working precision used for a K-zero table at q.
mp::Bits zero_table_bits(double q, int K);

/// First K positive zeros of S_q. Throws Error naming k if a scan fails.
ZeroTable find_zeros(const QContext& ctx, int K);

/// ((1-q)/2) q^{(k-1/2-eps_k)^2} S_q'(omega_k), evaluated with MPFR's wide
/// exponent range so no intermediate overflows.
mp::BigFloat extract_Sk_mp(const ZeroTable& zt, int k);
/// q^{(k-eps_k)^2} C_q(omega_k).
mp::BigFloat extract_Rk_mp(const ZeroTable& zt, int k);
double extract_Sk(const ZeroTable& zt, int k);
double extract_Rk(const ZeroTable& zt, int k);
/// eps_k at table precision.
mp::BigFloat eps_mp(const ZeroTable& zt, int k);

}  // namespace qfourier
