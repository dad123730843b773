#include <doctest.h>

#include <cmath>
#include <memory>

#include "oracle.hpp"
#include "qfourier/analysis.hpp"
#include "qfourier/error.hpp"
#include "qfourier/functions.hpp"

using namespace qfourier;

namespace {

std::shared_ptr<const ZeroTable> zeros_05() {
  static const auto zt = std::make_shared<const ZeroTable>(find_zeros(QContext(0.5), 24));
  return zt;
}

}  // namespace

TEST_CASE("Hoelder check") {
  const GridFunction abs = StockFunction::absolute().grid(0.5, 200);
  const HolderReport r = check_holder(abs, 2.0, 1.0);
  CHECK(r.satisfied);
  CHECK(r.limits_match);
  CHECK(r.lambda_above_half);
  CHECK_FALSE(r.first_violation);
  const HolderReport bad = check_holder(abs, 2.0, 1.5);
  CHECK_FALSE(bad.satisfied);
  REQUIRE(bad.first_violation);

  const GridFunction step = StockFunction::step(0.3).grid(0.5, 200);
  const int na = step_index(0.5, 0.3);
  for (double lam : {1.0, 5.0, 50.0}) {
    CHECK(check_holder(step, 1.0, lam, na + 1).satisfied);
    CHECK_FALSE(check_holder(step, 1.0, lam, na).satisfied);
  }
  CHECK_FALSE(check_holder(StockFunction::signum().grid(0.5, 200), 1.0, 1.0).limits_match);
}

TEST_CASE("Hoelder estimates") {
  const HolderReport a = estimate_holder(StockFunction::absolute().grid(0.5, 200));
  CHECK(a.fit_available);
  CHECK(a.lambda_est == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(a.satisfied);
  const HolderReport x2 = estimate_holder(StockFunction::monomial(2).grid(0.5, 200));
  CHECK(x2.lambda_est >= 1.9);
  CHECK(x2.lambda_est <= 2.1);

  const HolderReport st = estimate_holder(StockFunction::step(0.3).grid(0.5, 200));
  CHECK(std::isinf(st.lambda_est));
  CHECK(st.n0 == step_index(0.5, 0.3) + 1);
  CHECK(st.jump_indices.size() == 1);

  // Random q and exponent: the fitted slope recovers the exponent of x^m.
  oracle::Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const double q = rng.uniform(0.2, 0.8);
    const int m = rng.integer(1, 4);
    const HolderReport r = estimate_holder(StockFunction::monomial(2 * m).grid(q, 80));
    CHECK(r.lambda_est == doctest::Approx(2.0 * m).epsilon(1e-6));
  }
}

TEST_CASE("decay diagnostics") {
  const auto zt = zeros_05();
  const QContext ctx(0.5);
  const DecayReport a = decay_diagnostics(StockFunction::absolute().grid(0.5, 200), *zt, 20, ctx);
  CHECK(a.c_lin.available);
  CHECK(a.c_lin_gt_1);
  CHECK(a.c_lin.c >= 1.9);
  const DecayReport s = decay_diagnostics(StockFunction::signum().grid(0.5, 200), *zt, 20, ctx);
  CHECK_FALSE(s.c_lin_gt_1);
  const DecayReport m = decay_diagnostics(StockFunction::monomial(2).grid(0.5, 200), *zt, 20, ctx);
  CHECK(m.c_quad.available);
  CHECK(m.c_quad_gt_0);
}

TEST_CASE("orthogonality") {
  const QContext ctx(0.5);
  const OrthogonalityReport r = verify_orthogonality(*zeros_05(), 8, ctx);
  CHECK(r.passed(1e-8));
  CHECK(r.cc00_residual <= 1e-10);
  CHECK(r.max_offdiag_cc <= 1e-8 * r.max_mu);
  CHECK(r.max_offdiag_ss <= 1e-8 * r.max_mu);
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) CHECK(r.cc[i][j] == doctest::Approx(r.cc[j][i]));
  CHECK(r.cc[0][0] == doctest::Approx(2.0));
  CHECK(r.cc[3][3] == doctest::Approx(mu_k(*zeros_05(), 3).to_double()));
}

TEST_CASE("difference energy") {
  const QContext ctx(0.5);
  const EnergyCheck e = difference_energy(StockFunction::absolute().scalar(), 1.0, 1.0, ctx);
  CHECK(e.holds);
  CHECK(e.energy <= e.bound);
  CHECK_THROWS_AS(difference_energy(StockFunction::absolute().scalar(), 1.0, 0.5, ctx), DomainError);
}

TEST_CASE("sign: pointwise errors shrink but slowly") {
  const QContext ctx(0.5);
  const auto zt = std::make_shared<const ZeroTable>(find_zeros(ctx, 60));
  const FourierSeries fs = closed_form_series(StockFunction::signum(), zt, 60);
  for (double x : {1.0, 0.5, 0.25}) {
    const double e5 = std::fabs(eval_partial_sum(fs, x, 5) - 1.0);
    const double e60 = std::fabs(eval_partial_sum(fs, x, 60) - 1.0);
    CHECK(e60 < e5);
  }
}
