#pragma once

// Residual checks for the structural identities of C_q, S_q and exp_q.

#include <complex>

#include "qfourier/qcore.hpp"
#include "qfourier/zeros.hpp"

namespace qfourier {

/// C_q(q^{1/2} w z) - C_q(q^{-1/2} w z) against -(w/(1-q)) S_q(w z) z (q^{1/2} - q^{-1/2}).
IdentityCheck check_cosine_difference(double omega, double z, const QContext& ctx);
/// S_q(q^{1/2} w z) - S_q(q^{-1/2} w z) against (w/(1-q)) C_q(w z) z (q^{1/2} - q^{-1/2}).
IdentityCheck check_sine_difference(double omega, double z, const QContext& ctx);
/// delta exp_q(lambda (1-q) x) / delta x against lambda exp_q(lambda (1-q) x).
IdentityCheck check_exp_eigen(double lambda, double x, const QContext& ctx);
/// exp_q(i z) against C_q(z) + i S_q(z); residual is the modulus of the difference.
IdentityCheck check_exp_split(double z, const QContext& ctx);

/// C_q(omega_k) C_q(q^{1/2} omega_k) - 1 and C_q(omega_k) C_q(q^{-1/2} omega_k) - 1
/// at table precision.
struct ReciprocalCheck {
  double half = 0.0;
  double minus_half = 0.0;
};
ReciprocalCheck check_reciprocal(const ZeroTable& zt, int k);

/// C_q and S_q against their third Jackson q-Bessel forms (base q^2), z > 0.
IdentityCheck check_bessel_cosine(double z, const QContext& ctx);
IdentityCheck check_bessel_sine(double z, const QContext& ctx);

}  // namespace qfourier
