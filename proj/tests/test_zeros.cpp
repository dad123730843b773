#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qfourier/analysis.hpp"
#include "qfourier/error.hpp"
#include "qfourier/identities.hpp"
#include "qfourier/theorem_d.hpp"
#include "qfourier/zeros.hpp"

using namespace qfourier;

namespace {

const ZeroTable& table_05() {
  static const ZeroTable zt = find_zeros(QContext(0.5), 12);
  return zt;
}

}  // namespace

TEST_CASE("alpha_k") {
  CHECK(alpha_k(0.5, 1) == doctest::Approx(std::log(1 - 0.125 / 0.75) / (2 * std::log(0.5))).epsilon(1e-14));
  CHECK(alpha_k(0.5, 1) == doctest::Approx(0.13155).epsilon(1e-4));
  for (int k = 1; k < 10; ++k) CHECK(alpha_k(0.3, k + 1) < alpha_k(0.3, k));

  double C = 0.0;
  for (int k = 5; k <= 15; ++k) C = std::max(C, alpha_k(0.5, k) / std::pow(0.5, 2 * k));
  for (int k = 5; k <= 15; ++k) CHECK(alpha_k(0.5, k) >= 0.5 * C * std::pow(0.5, 2 * k));
  CHECK_FALSE(alpha_defined(0.95, 1));
  CHECK_THROWS_AS(alpha_k(0.95, 1), DomainError);
}

TEST_CASE("beta0") {
  auto p = [](double q) { return (1 - q * q) * (1 - q * q) - q * q * q; };
  CHECK(p(0.6) > 0);
  CHECK(p(0.7) < 0);
  const double b = beta0();
  CHECK(b > 0.6);
  CHECK(b < 0.7);
  CHECK(std::fabs(p(b)) < 1e-14);
  CHECK(p(0.5) > 0);
}

TEST_CASE("analytic brackets") {
  const Bracket b = theorem_a_bracket(0.5, 1);
  CHECK(b.valid);
  CHECK(b.lo == doctest::Approx(std::pow(0.5, -1 + alpha_k(0.5, 1) + 0.25)));
  CHECK(b.lo == doctest::Approx(1.5354).epsilon(1e-4));
  CHECK(b.hi == doctest::Approx(1.6818).epsilon(1e-4));
  CHECK_FALSE(theorem_a_bracket(0.8, 3).valid);
}

TEST_CASE("first zero against a dense scan") {
  const double w = oracle::first_root([](long double z) { return oracle::sq(z, 0.5L); }, 1.0, 2.0, 1e-4);
  CHECK(w > 1.5354);
  CHECK(w < 1.6818);
  CHECK(std::fabs(table_05().entry(1).omega_d - w) < 1e-12);
}

TEST_CASE("zeros lie in their brackets and are simple") {
  const ZeroTable& zt = table_05();
  REQUIRE(zt.size() == 12);
  CHECK(zt.verify_brackets());
  const QContext ctx(0.5);
  for (int k = 1; k <= 10; ++k) {
    const ZeroEntry& e = zt.entry(k);
    CHECK(e.in_theorem_a);
    CHECK(e.valid);
    CHECK(e.eps > 0);
    CHECK(e.eps < e.alpha);
    const Bracket b = theorem_a_bracket(0.5, k);
    CHECK(e.omega_d >= b.lo);
    CHECK(e.omega_d <= b.hi);
    if (k > 1) CHECK(zt.entry(k).omega_d > zt.entry(k - 1).omega_d);
  }
  for (int k = 1; k < 8; ++k) {
    const double d0 = sq_prime(zt.entry(k).omega_d, ctx).value;
    const double d1 = sq_prime(zt.entry(k + 1).omega_d, ctx).value;
    CHECK(d0 * d1 < 0);
  }
}

TEST_CASE("zeros for several q stay inside the analytic brackets") {
  for (double q : {0.3, 0.6}) {
    const ZeroTable zt = find_zeros(QContext(q), 12);
    for (int k = 1; k <= 12; ++k) CHECK(zt.entry(k).in_theorem_a);
  }
}

TEST_CASE("zeros beyond beta0 carry no certificate from the analytic bracket") {
  const ZeroTable zt = find_zeros(QContext(0.8), 6);
  CHECK(zt.verify_brackets());
  for (int k = 1; k <= 6; ++k) {
    CHECK_FALSE(zt.entry(k).valid);
    CHECK(std::fabs(sq(zt.entry(k).omega_d, QContext(0.8), Backend::multiprecision).value) <
          1e-10 * std::fabs(sq_prime(zt.entry(k).omega_d, QContext(0.8)).value));
  }
}

TEST_CASE("reciprocal identity at the zeros") {
  const ZeroTable& zt = table_05();
  for (int k = 1; k <= 10; ++k) {
    const ReciprocalCheck r = check_reciprocal(zt, k);
    CHECK(std::fabs(r.half) <= 1e-8);
    CHECK(std::fabs(r.minus_half) <= 1e-8);
  }
}

TEST_CASE("finite recurrences against direct series") {
  const ZeroTable& zt = table_05();
  const QContext ctx(0.5);
  // Direct series at table precision: near the zeros the value is too
  // sensitive to evaluate at a double-rounded omega_k.
  const QKernel& ker = zt.kernel();
  for (int k = 1; k <= 6; ++k) {
    const mp::BigFloat& w = zt.entry(k).omega;
    for (int n = 1; n <= 10; ++n) {
      const mp::BigFloat qn = mp::pow(zt.q_mp(), static_cast<long>(n));
      const double ds = ker.sq(zt.q_mp() * qn * w).to_double();
      const double dc = ker.cq(ker.sqrt_q() * qn * w).to_double();
      CHECK(std::fabs(theorem_d_sq(k, n, zt, ctx) - ds) <= 1e-8 * std::fabs(ds));
      CHECK(std::fabs(theorem_d_cq(k, n, zt, ctx) - dc) <= 1e-8 * std::fabs(dc));
    }
  }
}

TEST_CASE("asymptotic factors at q = 0.9") {
  const QContext ctx(0.9);
  REQUIRE(ctx.theorem_e_window());
  REQUIRE(ctx.theorem_f_window());
  const ZeroTable zt = find_zeros(ctx, 12);
  const double B = lemma_bound_B(0.9), R = rk_bound(0.9);
  CHECK(R == doctest::Approx(2 / (0.1 * q_pochhammer_inf(0.9, 0.9))));
  for (int k = 1; k <= 12; ++k) {
    const double s = std::fabs(extract_Sk(zt, k)), r = std::fabs(extract_Rk(zt, k));
    CHECK(s <= B);
    CHECK(r < R);
    CHECK(s > 0);
    CHECK(r > 0);
  }
}

TEST_CASE("lemma bound grows with q") {
  CHECK(std::isfinite(lemma_bound_B(0.5)));
  CHECK(lemma_bound_B(0.3) < lemma_bound_B(0.6));
  CHECK(lemma_bound_B(0.6) < lemma_bound_B(0.9));
  double ref = 0.0;
  for (int m = 1; m < 200; ++m) ref += m * std::pow(0.5, (m - 1) * (m - 1));
  CHECK(lemma_bound_B(0.5) == doctest::Approx(2 * ref / static_cast<double>(oracle::poch_inf(0.25L, 0.5L))));
}
