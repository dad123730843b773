#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qfourier/error.hpp"
#include "qfourier/qcore.hpp"
#include "qfourier/qtrig.hpp"
#include "qfourier/zeros.hpp"

using namespace qfourier;

TEST_CASE("context rejects q outside (0, 1)") {
  CHECK_THROWS_AS(QContext(0.0), DomainError);
  CHECK_THROWS_AS(QContext(1.0), DomainError);
  CHECK_THROWS_AS(QContext(-0.5), DomainError);
  CHECK_THROWS_AS(QContext(NAN), DomainError);
  CHECK(QContext(0.9).theorem_e_window());
  CHECK_FALSE(QContext(0.95).theorem_f_window());
}

TEST_CASE("pochhammer symbols") {
  CHECK(q_pochhammer(0.3, 0.5, 0) == 1.0);
  CHECK(q_pochhammer(0.5, 0.5, 3) == doctest::Approx(0.5 * 0.75 * 0.875).epsilon(1e-15));
  const double inf = q_pochhammer_inf(0.5, 0.5);
  CHECK(std::fabs(inf - 0.2887880950866024) < 1e-15);
  CHECK(std::fabs(inf - static_cast<double>(oracle::poch_inf(0.5L, 0.5L))) < 1e-15);
  CHECK(q_pochhammer({0.5, 0.25}, 0.5, 4) ==
        doctest::Approx(q_pochhammer(0.5, 0.5, 4) * q_pochhammer(0.25, 0.5, 4)).epsilon(1e-15));
  const auto z = q_pochhammer(std::complex<double>(0.2, 0.3), 0.6, 5);
  std::complex<double> ref = 1.0;
  for (int j = 0; j < 5; ++j) ref *= 1.0 - std::complex<double>(0.2, 0.3) * std::pow(0.6, j);
  CHECK(std::abs(z - ref) < 1e-15);
}

TEST_CASE("symmetric q-difference quotient") {
  const double q = 0.5;
  for (double x : {0.3, -1.7, 4.0}) CHECK(delta_quotient([](double t) { return t; }, x, q) == doctest::Approx(1.0));
  CHECK(delta_quotient([](double t) { return t * t; }, 1.0, q) == doctest::Approx(std::sqrt(q) + 1 / std::sqrt(q)));
  CHECK_THROWS_AS(delta_quotient([](double t) { return t; }, 0.0, q), DomainError);
}

TEST_CASE("Jackson integrals of monomials") {
  const QContext ctx(0.5);
  CHECK(std::fabs(q_integral_0a([](double) { return 1.0; }, 1.0, ctx).value - 1.0) < 1e-15);
  CHECK(q_integral_0a([](double t) { return t; }, 1.0, ctx).value == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(q_integral_0a([](double t) { return t * t; }, 1.0, ctx).value == doctest::Approx(4.0 / 7).epsilon(1e-15));
  CHECK(q_integral_sym([](double t) { return t * t * t; }, ctx).value == 0.0);
  CHECK(q_integral_sym([](double t) { return t * t; }, ctx).value == doctest::Approx(8.0 / 7).epsilon(1e-15));
  CHECK(q_integral_sym([](double t) { return std::fabs(t); }, ctx).value == doctest::Approx(4.0 / 3).epsilon(1e-15));

  const auto bounded = q_integral_0a([](double) { return 1.0; }, 1.0, ctx.with_grid_depth(20), 1.0);
  REQUIRE(bounded.tail_bound);
  CHECK(*bounded.tail_bound == doctest::Approx(std::pow(0.5, bounded.nodes_used)));
}

TEST_CASE("Jackson integral is nondecreasing in depth for nonnegative f") {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const double q = rng.uniform(0.1, 0.9);
    const double c = rng.uniform(0.0, 3.0);
    auto f = [c](double t) { return c + std::sin(5 * t) * std::sin(5 * t); };
    double prev = 0.0;
    for (int depth = 1; depth <= 60; depth += 3) {
      const double v = q_integral_0a(f, 1.0, QContext(q).with_grid_depth(depth)).value;
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("Jackson integral is linear") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const QContext ctx(rng.uniform(0.05, 0.95));
    const double al = rng.uniform(-3, 3), be = rng.uniform(-3, 3), s = rng.uniform(0.5, 4);
    auto f = [s](double t) { return std::cos(s * t) + t * t * t; };
    auto g = [s](double t) { return std::exp(-s * t); };
    const double lhs = q_integral_sym([&](double t) { return al * f(t) + be * g(t); }, ctx).value;
    const double rhs = al * q_integral_sym(f, ctx).value + be * q_integral_sym(g, ctx).value;
    CHECK(std::fabs(lhs - rhs) <= 1e-13 * (1 + std::fabs(lhs)));
  }
}

TEST_CASE("integration by parts") {
  const QContext ctx = QContext(0.5).with_grid_depth(60);
  const ScalarFunction one{[](double) { return 1.0; }, 1.0, 1.0};
  const ScalarFunction x{[](double t) { return t; }, 0.0, 0.0};
  const ScalarFunction x2{[](double t) { return t * t; }, 0.0, 0.0};
  for (auto v : {IbpVariant::upper, IbpVariant::lower}) {
    CHECK(verify_ibp(one, one, ctx, v).residual == 0.0);
    const IdentityCheck c = verify_ibp(x, x2, ctx, v);
    CHECK(c.residual <= 1e-10 * std::max(1.0, c.scale));
  }

  const QContext full(0.5);
  const double w = find_zeros(full, 1).entry(1).omega_d;
  const ScalarFunction cw{[&](double t) { return cq(w * t, full).value; }, 1.0, 1.0};
  const ScalarFunction sw{[&](double t) { return sq(0.5 * w * t, full).value; }, 0.0, 0.0};
  const IdentityCheck c = verify_ibp(cw, sw, ctx, IbpVariant::upper);
  CHECK(c.residual <= 1e-8 * std::max(1.0, c.scale));

  const ScalarFunction nolimit{[](double t) { return t; }, std::nullopt, std::nullopt};
  CHECK_THROWS_AS(verify_ibp(nolimit, x, ctx, IbpVariant::upper), PreconditionError);
}

TEST_CASE("fundamental identity for polynomials") {
  const QContext ctx = QContext(0.5).with_grid_depth(60);
  oracle::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const double c0 = rng.uniform(-2, 2), c1 = rng.uniform(-2, 2), c2 = rng.uniform(-2, 2), c3 = rng.uniform(-2, 2);
    const ScalarFunction p{[=](double t) { return c0 + t * (c1 + t * (c2 + t * c3)); }, c0, c0};
    const IdentityCheck r = verify_fundamental(p, ctx);
    CHECK(r.residual <= 1e-10 * std::max(1.0, r.scale));
  }
  // A jump at 0 enters through the one-sided limits.
  const ScalarFunction sgn{[](double t) { return t > 0 ? 1.0 : -1.0; }, 1.0, -1.0};
  const IdentityCheck r = verify_fundamental(sgn, ctx);
  CHECK(r.residual <= 1e-10 * std::max(1.0, r.scale));
}

TEST_CASE("grid functions") {
  const GridFunction g = GridFunction::sample([](double t) { return t * t; }, 0.5, 30, 0.0, 0.0);
  CHECK(g.depth() == 30);
  CHECK(g.pos(1) == 1.0);
  CHECK(g.neg(3) == 0.0625);
  CHECK(g.at(-0.25) == 0.0625);
  CHECK_THROWS_AS(g.at(0.0), DomainError);
  CHECK_THROWS_AS(g.at(0.3), DomainError);
  CHECK(q_integral_sym(g, QContext(0.5).with_grid_depth(30)).value ==
        doctest::Approx(q_integral_sym([](double t) { return t * t; }, QContext(0.5).with_grid_depth(30)).value));
  CHECK_THROWS_AS(GridFunction(0.5, {1.0, 2.0}, {1.0}, 0.0, 0.0), DomainError);
}
