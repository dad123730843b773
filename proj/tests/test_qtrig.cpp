#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracle.hpp"
#include "qfourier/error.hpp"
#include "qfourier/identities.hpp"
#include "qfourier/qtrig.hpp"

using namespace qfourier;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("exp_q") {
  const QContext ctx(0.5);
  CHECK(exp_q(0.0, ctx).value == 1.0);
  const double e1 = exp_q(1.0, ctx).value;
  CHECK(rel(e1, exp_q(1.0, ctx, Backend::double_double).value) <= 1e-13);
  CHECK(rel(e1, static_cast<double>(oracle::exp_q(1.0L, 0.5L).real())) <= 1e-13);

  const auto w = std::complex<double>(0.4, -1.1);
  const auto ref = oracle::exp_q(std::complex<long double>(0.4L, -1.1L), 0.5L);
  CHECK(std::abs(exp_q(w, ctx).value - std::complex<double>(ref)) <= 1e-13 * std::abs(ref));
  const IdentityCheck split = check_exp_split(0.7, ctx);
  CHECK(split.residual <= 1e-12);
}

TEST_CASE("C_q and S_q against the term-by-term oracle") {
  oracle::Rng rng(42);
  for (int i = 0; i < 40; ++i) {
    const double q = rng.uniform(0.2, 0.8);
    const double z = rng.uniform(-3.0, 3.0);
    const QContext ctx(q);
    const long double c = oracle::cq(z, q), s = oracle::sq(z, q);
    CHECK(std::fabs(cq(z, ctx).value - static_cast<double>(c)) <= 1e-13 * std::max(1.0L, std::fabs(c)));
    CHECK(std::fabs(sq(z, ctx).value - static_cast<double>(s)) <= 1e-13 * std::max(1.0L, std::fabs(s)));
  }
}

TEST_CASE("parity") {
  oracle::Rng rng(5);
  const QContext ctx(0.5);
  for (int i = 0; i < 20; ++i) {
    const double z = rng.uniform(0.0, 6.0);
    CHECK(cq(-z, ctx).value == cq(z, ctx).value);
    CHECK(sq(-z, ctx).value == -sq(z, ctx).value);
    CHECK(sq_prime(-z, ctx).value == sq_prime(z, ctx).value);
  }
}

TEST_CASE("telemetry") {
  const QContext ctx(0.5);
  for (double z : {0.1, 1.0, 5.0, 30.0}) {
    const auto v = cq(z, ctx);
    CHECK(v.cancellation_ratio >= 1.0);
    CHECK(v.terms_used <= ctx.max_terms());
  }
  Options o;
  o.max_terms = 2;
  CHECK_THROWS_AS(cq(1.0, QContext(0.5, o)), NonConvergenceError);
}

TEST_CASE("automatic backend survives large cancellation") {
  const QContext ctx(0.5);
  for (double z : {12.0, 40.0, 150.0}) {
    const auto a = cq(z, ctx);
    const auto m = cq(z, ctx, Backend::multiprecision);
    CHECK(rel(a.value, m.value) <= 1e-12);
  }
}

TEST_CASE("S_q' by Richardson: central differences converge at second order") {
  const QContext ctx(0.5);
  const double exact = sq_prime(1.0, ctx).value;
  auto err = [&](double h) {
    const double fd = (sq(1.0 + h, ctx, Backend::multiprecision).value - sq(1.0 - h, ctx, Backend::multiprecision).value) / (2 * h);
    return std::fabs(fd - exact);
  };
  const double e1 = err(1e-2), e2 = err(1e-3);
  CHECK(e2 < e1);
  CHECK(e1 / e2 == doctest::Approx(100.0).epsilon(0.05));
  CHECK(err(1e-5) < 1e-9);
}

TEST_CASE("third Jackson q-Bessel connection") {
  const double q = 0.5;
  const QContext ctx(q);
  const double pre = q_pochhammer_inf(q * q, q * q) / q_pochhammer_inf(q, q * q);
  for (double z : {0.2, 0.6, 1.1, 1.5}) {
    const double c = std::pow(q, -0.375) * pre * std::sqrt(z) * jackson_bessel3(-0.5, std::pow(q, -0.75) * z, q * q, ctx).value;
    const double s = std::pow(q, 0.125) * pre * std::sqrt(z) * jackson_bessel3(0.5, std::pow(q, -0.25) * z, q * q, ctx).value;
    CHECK(rel(c, cq(z, ctx).value) <= 1e-10);
    CHECK(rel(s, sq(z, ctx).value) <= 1e-10);
    CHECK(check_bessel_cosine(z, ctx).residual <= 1e-10 * check_bessel_cosine(z, ctx).scale);
    CHECK(check_bessel_sine(z, ctx).residual <= 1e-10 * check_bessel_sine(z, ctx).scale);
  }
  CHECK_THROWS_AS(jackson_bessel3(-2.0, 0.5, q, ctx), DomainError);
  CHECK_THROWS_AS(jackson_bessel3(0.5, -0.5, q, ctx), DomainError);
  // Integer order at complex argument matches the real axis.
  CHECK(std::abs(jackson_bessel3(1.0, std::complex<double>(0.7, 0.0), q, ctx).value -
                 jackson_bessel3(1.0, 0.7, q, ctx).value) <= 1e-15);
}

TEST_CASE("difference relations and the exp_q eigen-relation") {
  oracle::Rng rng(99);
  for (double q : {0.3, 0.5}) {
    const QContext ctx(q);
    for (int i = 0; i < 20; ++i) {
      const double x = rng.uniform(-1.5, 1.5);
      const double w = rng.uniform(0.5, 3.0);
      const IdentityCheck c = check_cosine_difference(w, x, ctx);
      const IdentityCheck s = check_sine_difference(w, x, ctx);
      const IdentityCheck e = check_exp_eigen(rng.uniform(-2, 2), x, ctx);
      CHECK(c.residual <= 1e-10 * c.scale);
      CHECK(s.residual <= 1e-10 * s.scale);
      CHECK(e.residual <= 1e-10 * e.scale);
    }
  }
}
