#include <doctest.h>

#include <cmath>
#include <memory>

#include "oracle.hpp"
#include "qfourier/analysis.hpp"
#include "qfourier/error.hpp"
#include "qfourier/fourier.hpp"
#include "qfourier/functions.hpp"
#include "qfourier/qtrig.hpp"

using namespace qfourier;

namespace {

std::shared_ptr<const ZeroTable> zeros_05() {
  static const auto zt = std::make_shared<const ZeroTable>(find_zeros(QContext(0.5), 40));
  return zt;
}

const QContext ctx05(0.5);

FourierSeries quad(const StockFunction& f, int K) { return compute_series(f.grid(0.5, 200), zeros_05(), K, ctx05); }

}  // namespace

TEST_CASE("step index") {
  CHECK(step_index(0.5, 0.3) == 2);
  CHECK(step_index(0.5, 0.5) == 2);  // q^1 = a is not below a
  CHECK(step_index(0.5, 0.51) == 1);
  CHECK(step_index(0.9, 0.3) == 12);
  CHECK_THROWS_AS(step_index(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(step_index(0.5, 0.0), DomainError);
}

TEST_CASE("constant terms") {
  CHECK(coeff_a0(StockFunction::absolute().grid(0.5, 200), ctx05) == doctest::Approx(4.0 / 3).epsilon(1e-15));
  CHECK(coeff_a0(StockFunction::step(0.3).grid(0.5, 200), ctx05) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(coeff_a0(StockFunction::signum().grid(0.5, 200), ctx05) == 0.0);
  for (int m = 0; m <= 5; ++m) {
    const double ref = (1 + (m % 2 ? -1 : 1)) * 0.5 / (1 - std::pow(0.5, m + 1));
    CHECK(coeff_a0(StockFunction::monomial(m).grid(0.5, 200), ctx05) == doctest::Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("closed forms agree with quadrature") {
  const auto zt = zeros_05();
  std::vector<StockFunction> fs = {StockFunction::absolute(), StockFunction::signum(), StockFunction::step(0.3),
                                   StockFunction::step(0.71)};
  for (int m = 0; m <= 5; ++m) fs.push_back(StockFunction::monomial(m));
  for (const auto& f : fs) {
    CAPTURE(f.name());
    const FourierSeries cf = closed_form_series(f, zt, 8);
    const FourierSeries qd = quad(f, 8);
    const SeriesComparison c = compare_series(qd, cf, 1e-8, 1e-40);
    CHECK(c.agree);
    CHECK(c.max_rel <= 1e-8);
    CHECK(cf.provenance.at(0) == "closed_form:" + f.name());
    CHECK(qd.provenance.at(0) == "quadrature");
  }
}

TEST_CASE("symmetry kills half the coefficients") {
  const FourierSeries even = quad(StockFunction::absolute(), 8);
  const FourierSeries odd = quad(StockFunction::signum(), 8);
  for (int k = 1; k <= 8; ++k) {
    CHECK(even.b_d(k) == 0.0);
    CHECK(odd.a_d(k) == 0.0);
    CHECK(even.a_d(k) != 0.0);
    CHECK(odd.b_d(k) != 0.0);
  }
}

TEST_CASE("modes expand to themselves") {
  const auto zt = zeros_05();
  const double w2 = zt->entry(2).omega_d, w3 = zt->entry(3).omega_d;
  const GridFunction one = GridFunction::sample([](double) { return 1.0; }, 0.5, 200, 1.0, 1.0);
  const GridFunction c2 = GridFunction::sample([&](double t) { return cq(std::sqrt(0.5) * w2 * t, ctx05).value; },
                                               0.5, 200, 1.0, 1.0);
  const GridFunction s3 = GridFunction::sample([&](double t) { return sq(0.5 * w3 * t, ctx05).value; }, 0.5, 200,
                                               0.0, 0.0);
  const FourierSeries f1 = compute_series(one, zt, 6, ctx05);
  const FourierSeries fc = compute_series(c2, zt, 6, ctx05);
  const FourierSeries fsn = compute_series(s3, zt, 6, ctx05);
  CHECK(f1.a0.to_double() == doctest::Approx(2.0).epsilon(1e-14));
  for (int k = 1; k <= 6; ++k) {
    CHECK(std::fabs(f1.a_d(k)) < 1e-12);
    CHECK(std::fabs(f1.b_d(k)) < 1e-12);
    CHECK(std::fabs(fc.a_d(k) - (k == 2 ? 1.0 : 0.0)) < 1e-12);
    CHECK(std::fabs(fc.b_d(k)) < 1e-12);
    CHECK(std::fabs(fsn.b_d(k) - (k == 3 ? 1.0 : 0.0)) < 1e-12);
    CHECK(std::fabs(fsn.a_d(k)) < 1e-12);
  }
}

TEST_CASE("coefficients are linear in f") {
  oracle::Rng rng(17);
  const auto zt = zeros_05();
  const GridFunction f = StockFunction::absolute().grid(0.5, 200);
  const GridFunction g = StockFunction::monomial(3).grid(0.5, 200);
  for (int trial = 0; trial < 5; ++trial) {
    const double al = rng.uniform(-2, 2), be = rng.uniform(-2, 2);
    std::vector<double> pos, neg;
    for (int n = 1; n <= 200; ++n) {
      pos.push_back(al * f.pos(n) + be * g.pos(n));
      neg.push_back(al * f.neg(n) + be * g.neg(n));
    }
    const GridFunction h(0.5, pos, neg, 0.0, 0.0);
    const FourierSeries sf = compute_series(f, zt, 6, ctx05), sg = compute_series(g, zt, 6, ctx05),
                        sh = compute_series(h, zt, 6, ctx05);
    for (int k = 1; k <= 6; ++k) {
      CHECK(std::fabs(sh.a_d(k) - (al * sf.a_d(k) + be * sg.a_d(k))) < 1e-13);
      CHECK(std::fabs(sh.b_d(k) - (al * sf.b_d(k) + be * sg.b_d(k))) < 1e-13);
    }
  }
}

TEST_CASE("a step near 0 tends to the sign function") {
  const auto zt = zeros_05();
  const FourierSeries sgn = closed_form_series(StockFunction::signum(), zt, 6);
  double prev = INFINITY;
  for (double a : {1e-3, 1e-6, 1e-12}) {
    const FourierSeries st = closed_form_series(StockFunction::step(a), zt, 6);
    double d = std::fabs(st.a0.to_double() - sgn.a0.to_double());
    for (int k = 1; k <= 6; ++k) d = std::max({d, std::fabs(st.a_d(k) - sgn.a_d(k)), std::fabs(st.b_d(k) - sgn.b_d(k))});
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("partial sums of |x|") {
  const auto zt = zeros_05();
  const FourierSeries fs = closed_form_series(StockFunction::absolute(), zt, 40);
  CHECK(std::fabs(eval_partial_sum(fs, 0.25, 30) - 0.25) < 1e-6);
  const GridFunction g = StockFunction::absolute().grid(0.5, 200);
  const double e5 = sup_error_on_grid(fs, g, 5, 20).sup_error;
  const double e40 = sup_error_on_grid(fs, g, 40, 20).sup_error;
  CHECK(e40 <= 1e-6);
  CHECK(e40 < e5);
  double prev = INFINITY;
  for (int K : {5, 10, 15, 20}) {  // beyond ~25 the error sits at the noise floor
    const double e = sup_error_on_grid(fs, g, K, 20).sup_error;
    CHECK(e < prev);
    prev = e;
  }
  // Even function: the partial sum is even at complex points too.
  const auto z = std::complex<double>(0.3, 0.2);
  CHECK(std::abs(eval_partial_sum(fs, z, 20) - eval_partial_sum(fs, -z, 20)) < 1e-12);
}

TEST_CASE("off-grid reconstruction of x^2") {
  const auto zt = zeros_05();
  const FourierSeries fs = closed_form_series(StockFunction::monomial(2), zt, 40);
  const auto errs = offgrid_error(fs, [](std::complex<double> z) { return z * z; }, {1.0 / 3, 1.2, 0.0}, 40);
  REQUIRE(errs.size() == 3);
  for (const auto& e : errs) CHECK(e.error <= 1e-6);
  const auto e10 = offgrid_error(fs, [](std::complex<double> z) { return z * z; }, {1.2}, 10);
  CHECK(e10[0].error > errs[1].error);
}

TEST_CASE("partial sums that leave the double range report the mode") {
  const auto zt = zeros_05();
  const FourierSeries fs = closed_form_series(StockFunction::signum(), zt, 40);
  CHECK_THROWS_AS(eval_partial_sum(fs, 1e6, 40), OverflowError);
  const auto errs = offgrid_error(fs, [](std::complex<double>) { return 1.0; }, {1e6}, 40);
  CHECK(errs[0].overflow);
  CHECK_FALSE(errs[0].message.empty());
}

TEST_CASE("integration by parts behind the decay estimates") {
  const auto zt = zeros_05();
  const NodeModes modes = node_modes(*zt, 6, 200);
  for (const auto& f : {StockFunction::absolute(), StockFunction::monomial(2), StockFunction::monomial(3)}) {
    const ScalarFunction sf = f.scalar();
    for (int k = 1; k <= 6; ++k) {
      const IdentityCheck c = check_cosine_by_parts(sf, k, modes, *zt);
      const IdentityCheck s = check_sine_by_parts(sf, k, modes, *zt);
      CHECK(c.residual <= 1e-12 * std::max(1.0, c.scale));
      CHECK(s.residual <= 1e-12 * std::max(1.0, s.scale));
    }
  }
}

TEST_CASE("validation") {
  FourierSeries fs = closed_form_series(StockFunction::absolute(), zeros_05(), 4);
  CHECK_NOTHROW(fs.validate());
  fs.b.pop_back();
  CHECK_THROWS_AS(fs.validate(), PreconditionError);
  CHECK_THROWS(compute_series(StockFunction::absolute().grid(0.5, 200), zeros_05(), 41, ctx05));
  CHECK_THROWS(compute_series(StockFunction::absolute().grid(0.6, 200), zeros_05(), 4, QContext(0.6)));
}
