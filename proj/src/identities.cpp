#include "qfourier/identities.hpp"

#include <algorithm>
#include <cmath>

#include "qfourier/error.hpp"
#include "qfourier/qtrig.hpp"

namespace qfourier {

namespace {

IdentityCheck make(double lhs, double rhs, double extra_scale = 0.0) {
  IdentityCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.residual = std::fabs(lhs - rhs);
  c.scale = std::max({std::fabs(lhs), std::fabs(rhs), extra_scale});
  return c;
}

}  // namespace

IdentityCheck check_cosine_difference(double omega, double z, const QContext& ctx) {
  const double q = ctx.q();
  const double sq = std::sqrt(q);
  const double up = cq(sq * omega * z, ctx).value;
  const double down = cq(omega * z / sq, ctx).value;
  const double rhs = -(omega / (1.0 - q)) * qfourier::sq(omega * z, ctx).value * z * (sq - 1.0 / sq);
  return make(up - down, rhs, std::max(std::fabs(up), std::fabs(down)));
}

IdentityCheck check_sine_difference(double omega, double z, const QContext& ctx) {
  const double q = ctx.q();
  const double sq = std::sqrt(q);
  const double up = qfourier::sq(sq * omega * z, ctx).value;
  const double down = qfourier::sq(omega * z / sq, ctx).value;
  const double rhs = (omega / (1.0 - q)) * cq(omega * z, ctx).value * z * (sq - 1.0 / sq);
  return make(up - down, rhs, std::max(std::fabs(up), std::fabs(down)));
}

IdentityCheck check_exp_eigen(double lambda, double x, const QContext& ctx) {
  const double q = ctx.q();
  const double c = lambda * (1.0 - q);
  auto f = [&](double t) { return exp_q(c * t, ctx).value; };
  const double lhs = delta_quotient(f, x, q);
  return make(lhs, lambda * f(x));
}

IdentityCheck check_exp_split(double z, const QContext& ctx) {
  const std::complex<double> e = exp_q(std::complex<double>(0.0, z), ctx).value;
  const std::complex<double> cs(cq(z, ctx).value, qfourier::sq(z, ctx).value);
  IdentityCheck c;
  c.lhs = std::abs(e);
  c.rhs = std::abs(cs);
  c.residual = std::abs(e - cs);
  c.scale = std::max(c.lhs, c.rhs);
  return c;
}

ReciprocalCheck check_reciprocal(const ZeroTable& zt, int k) {
  const ZeroEntry& e = zt.entry(k);
  const QKernel& ker = zt.kernel();
  const mp::BigFloat c_minus = ker.cq(e.omega / ker.sqrt_q());
  ReciprocalCheck r;
  r.half = (e.c_at * e.c_half - 1.0).to_double();
  r.minus_half = (e.c_at * c_minus - 1.0).to_double();
  return r;
}

namespace {

double bessel_prefactor(double q, const QContext& ctx) {
  return q_pochhammer_inf(q * q, q * q, ctx.options()) / q_pochhammer_inf(q, q * q, ctx.options());
}

}  // namespace

IdentityCheck check_bessel_cosine(double z, const QContext& ctx) {
  if (!(z > 0.0)) throw DomainError("check_bessel_cosine: z must be positive");
  const double q = ctx.q();
  const double j = jackson_bessel3(-0.5, std::pow(q, -0.75) * z, q * q, ctx).value;
  const double rhs = std::pow(q, -0.375) * bessel_prefactor(q, ctx) * std::sqrt(z) * j;
  return make(cq(z, ctx).value, rhs);
}

IdentityCheck check_bessel_sine(double z, const QContext& ctx) {
  if (!(z > 0.0)) throw DomainError("check_bessel_sine: z must be positive");
  const double q = ctx.q();
  const double j = jackson_bessel3(0.5, std::pow(q, -0.25) * z, q * q, ctx).value;
  const double rhs = std::pow(q, 0.125) * bessel_prefactor(q, ctx) * std::sqrt(z) * j;
  return make(qfourier::sq(z, ctx).value, rhs);
}

}  // namespace qfourier
