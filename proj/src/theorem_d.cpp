#include "qfourier/theorem_d.hpp"

#include <string>

#include "qfourier/error.hpp"

namespace qfourier {

namespace {

void check(int k, int n, const ZeroTable& zt) {
  if (n < 0) throw DomainError("theorem_d: n must be non-negative, got " + std::to_string(n));
  (void)zt.entry(k);
}

// sum_{j=0}^{n} (-1)^j q^{j(j+shift)} (q^{1+n-j};q)_{2j+odd} / (q;q)_{2j+odd} w^j
mp::BigFloat finite_sum(const ZeroTable& zt, int k, int n, double shift, int odd) {
  const mp::Bits bits = zt.bits() + 64;
  mp::BigFloat q = zt.q_mp();
  q.set_bits(bits);
  mp::BigFloat w = zt.entry(k).omega * zt.entry(k).omega;
  w.set_bits(bits);
  mp::BigFloat sum(0.0, bits);
  mp::BigFloat wj(1.0, bits);
  for (int j = 0; j <= n; ++j) {
    const std::size_t len = static_cast<std::size_t>(2 * j + odd);
    const mp::BigFloat ratio =
        q_pochhammer(mp::pow(q, static_cast<long>(1 + n - j)), q, len) / q_pochhammer(q, q, len);
    mp::BigFloat term = mp::pow(q, mp::BigFloat(j * (j + shift), bits)) * ratio * wj;
    if (j % 2 == 1) term = -term;
    sum += term;
    wj *= w;
  }
  return sum;
}

}  // namespace

mp::BigFloat theorem_d_sq_mp(int k, int n, const ZeroTable& zt) {
  check(k, n, zt);
  const QKernel& ker = zt.kernel();
  const mp::BigFloat s = ker.sq(ker.q() * zt.entry(k).omega);
  return s * finite_sum(zt, k, n, 0.5, 1);
}

mp::BigFloat theorem_d_cq_mp(int k, int n, const ZeroTable& zt) {
  check(k, n, zt);
  return zt.entry(k).c_half * finite_sum(zt, k, n, -0.5, 0);
}

double theorem_d_sq(int k, int n, const ZeroTable& zt, const QContext& ctx) {
  if (ctx.q() != zt.q()) throw DomainError("theorem_d_sq: context and zero table disagree on q");
  return theorem_d_sq_mp(k, n, zt).to_double();
}

double theorem_d_cq(int k, int n, const ZeroTable& zt, const QContext& ctx) {
  if (ctx.q() != zt.q()) throw DomainError("theorem_d_cq: context and zero table disagree on q");
  return theorem_d_cq_mp(k, n, zt).to_double();
}

}  // namespace qfourier
