#pragma once

// Finite-sum forms of S_q(q^{1+n} omega_k) and C_q(q^{1/2+n} omega_k).

#include "qfourier/bigfloat.hpp"
#include "qfourier/qcore.hpp"
#include "qfourier/zeros.hpp"

namespace qfourier {

/// S_q(q omega_k) * sum_{j=0}^{n} (-1)^j q^{j(j+1/2)} (q^{1+n-j};q)_{2j+1} / (q;q)_{2j+1} * omega_k^{2j}
mp::BigFloat theorem_d_sq_mp(int k, int n, const ZeroTable& zt);
/// C_q(q^{1/2} omega_k) * sum_{j=0}^{n} (-1)^j q^{j(j-1/2)} (q^{1+n-j};q)_{2j} / (q;q)_{2j} * omega_k^{2j}
mp::BigFloat theorem_d_cq_mp(int k, int n, const ZeroTable& zt);

double theorem_d_sq(int k, int n, const ZeroTable& zt, const QContext& ctx);
double theorem_d_cq(int k, int n, const ZeroTable& zt, const QContext& ctx);

}  // namespace qfourier
