// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qfourier/analysis.hpp"
#include "qfourier/fourier.hpp"
#include "qfourier/functions.hpp"
#include "qfourier/identities.hpp"
#include "qfourier/qtrig.hpp"
#include "qfourier/theorem_d.hpp"
#include "qfourier/zeros.hpp"

using namespace qfourier;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::shared_ptr<const ZeroTable> table(double q, int K) {
  static std::vector<std::shared_ptr<const ZeroTable>> cache;
  for (const auto& t : cache)
    if (t->q() == q && t->size() >= K) return t;
  cache.push_back(std::make_shared<const ZeroTable>(find_zeros(QContext(q), K)));
  return cache.back();
}

Outcome orthogonality() {
  const OrthogonalityReport r = verify_orthogonality(*table(0.5, 8), 8, QContext(0.5));
  const double off = std::max(r.max_offdiag_cc, r.max_offdiag_ss);
  const double diag = std::max(r.max_diag_rel_cc, r.max_diag_rel_ss);
  return {off <= 1e-8 * r.max_mu && diag <= 1e-8 && r.cc00_residual <= 1e-10,
          fmt("offdiag %.2e (limit %.2e), diag rel %.2e", off, 1e-8 * r.max_mu, diag) +
              fmt(", |<1,1>-2| %.2e", r.cc00_residual)};
}

Outcome zero_brackets() {
  const double b0 = beta0();
  bool ok = true;
  int inside = 0;
  for (double q : {0.3, 0.5, 0.6}) {
    ok = ok && q < b0;
    const auto zt = table(q, 12);
    for (int k = 1; k <= 12; ++k) {
      const bool in = zt->entry(k).in_theorem_a;
      inside += in;
      ok = ok && in;
    }
  }
  return {ok, fmt("beta0 %.6f; %g of 36 zeros strictly inside", b0, inside)};
}

Outcome reciprocal() {
  const auto zt = table(0.5, 10);
  double worst = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const ReciprocalCheck r = check_reciprocal(*zt, k);
    worst = std::max({worst, std::fabs(r.half), std::fabs(r.minus_half)});
  }
  return {worst <= 1e-8, fmt("worst |C C - 1| %.2e", worst)};
}

Outcome recurrences() {
  const auto zt = table(0.5, 6);
  const QKernel& ker = zt->kernel();
  double worst = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const mp::BigFloat& w = zt->entry(k).omega;
    for (int n = 0; n <= 10; ++n) {
      const mp::BigFloat qn = mp::pow(zt->q_mp(), static_cast<long>(n));
      const mp::BigFloat ds = ker.sq(zt->q_mp() * qn * w);
      const mp::BigFloat dc = ker.cq(ker.sqrt_q() * qn * w);
      worst = std::max({worst, (mp::abs(theorem_d_sq_mp(k, n, *zt) - ds) / mp::abs(ds)).to_double(),
                        (mp::abs(theorem_d_cq_mp(k, n, *zt) - dc) / mp::abs(dc)).to_double()});
    }
  }
  return {worst <= 1e-8, fmt("worst rel %.2e", worst)};
}

Outcome difference_relations() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  double worst = 0.0;
  for (double q : {0.3, 0.5}) {
    const QContext ctx(q);
    const double w = table(q, 1)->entry(1).omega_d;
    for (int i = 0; i < 20; ++i) {
      const double x = unif(rng);
      for (const IdentityCheck& c : {check_cosine_difference(w, x, ctx), check_sine_difference(w, x, ctx),
                                     check_exp_eigen(1.25, x, ctx)})
        worst = std::max(worst, c.residual / c.scale);
    }
  }
  return {worst <= 1e-10, fmt("worst residual/scale %.2e", worst)};
}

Outcome bessel() {
  const QContext ctx(0.5);
  double worst = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double z = 0.15 * i;
    const IdentityCheck c = check_bessel_cosine(z, ctx), s = check_bessel_sine(z, ctx);
    worst = std::max({worst, c.residual / c.scale, s.residual / s.scale});
  }
  return {worst <= 1e-10, fmt("worst rel %.2e", worst)};
}

Outcome closed_forms() {
  const QContext ctx(0.5);
  const auto zt = table(0.5, 8);
  std::vector<StockFunction> fs = {StockFunction::absolute(), StockFunction::step(0.3)};
  for (int m = 0; m <= 4; ++m) fs.push_back(StockFunction::monomial(m));
  double worst = 0.0;
  bool ok = true;
  for (const auto& f : fs) {
    const FourierSeries cf = closed_form_series(f, zt, 8);
    const FourierSeries qd = compute_series(f.grid(0.5, ctx.grid_depth()), zt, 8, ctx);
    // Below the quadrature noise floor only an absolute comparison is meaningful.
    const double floor = std::max(1.0, f.grid(0.5, 1).sup_norm()) * std::pow(0.5, ctx.grid_depth()) * 1e3;
    const SeriesComparison c = compare_series(qd, cf, 1e-8, floor);
    ok = ok && c.agree;
    worst = std::max(worst, c.max_rel);
  }
  return {ok && worst <= 1e-8, fmt("worst rel %.2e over 7 functions", worst)};
}

Outcome on_grid() {
  const auto zt = table(0.5, 40);
  const FourierSeries fs = closed_form_series(StockFunction::absolute(), zt, 40);
  const GridFunction g = StockFunction::absolute().grid(0.5, 200);
  double best = INFINITY;
  int best_k = 0;
  for (int K = 1; K <= 40; ++K) {
    const double e = sup_error_on_grid(fs, g, K, 20).sup_error;
    if (e < best) best = e, best_k = K;
  }
  const double e5 = sup_error_on_grid(fs, g, 5, 20).sup_error, e40 = sup_error_on_grid(fs, g, 40, 20).sup_error;
  return {best <= 1e-6 && e40 < e5, fmt("best %.2e at K=%g; K=5 %.2e", best, best_k, e5) + fmt(", K=40 %.2e", e40)};
}

Outcome off_grid() {
  const auto zt = table(0.5, 40);
  const FourierSeries fs = closed_form_series(StockFunction::monomial(2), zt, 40);
  auto target = [](std::complex<double> z) { return z * z; };
  double worst_best = 0.0;
  for (double x : {1.0 / 3.0, 1.2}) {
    double best = INFINITY;
    for (int K = 1; K <= 40; ++K) best = std::min(best, offgrid_error(fs, target, {x}, K)[0].error);
    worst_best = std::max(worst_best, best);
  }
  return {worst_best <= 1e-6, fmt("max over points of best error %.2e", worst_best)};
}

Outcome negative_control() {
  const QContext ctx(0.5);
  const GridFunction g = StockFunction::signum().grid(0.5, 200);
  const HolderReport h = check_holder(g, 1.0, 1.0);
  const DecayReport d = decay_diagnostics(g, *table(0.5, 20), 20, ctx);
  const auto zt = table(0.5, 60);
  const FourierSeries fs = closed_form_series(StockFunction::signum(), zt, 60);
  bool trend = true;
  std::string errs;
  for (double x : {1.0, 0.5, 0.25}) {
    const double e5 = std::fabs(eval_partial_sum(fs, x, 5) - 1.0);
    const double e60 = std::fabs(eval_partial_sum(fs, x, 60) - 1.0);
    trend = trend && e60 < e5;
    errs += fmt(" x=%g: %.2e->%.2e", x, e5, e60);
  }
  return {!h.limits_match && !d.c_lin_gt_1 && trend,
          std::string("limits_match ") + (h.limits_match ? "true" : "false") + fmt(", c_lin %.3f;", d.c_lin.c) + errs};
}

Outcome asymptotics() {
  const double q = 0.9;
  const QContext ctx(q);
  const auto zt = table(q, 12);
  const double B = lemma_bound_B(q), R = rk_bound(q);
  double smax = 0, rmax = 0, smin = INFINITY, rmin = INFINITY;
  for (int k = 1; k <= 12; ++k) {
    const double s = std::fabs(extract_Sk(*zt, k)), r = std::fabs(extract_Rk(*zt, k));
    smax = std::max(smax, s), rmax = std::max(rmax, r);
    smin = std::min(smin, s), rmin = std::min(rmin, r);
  }
  const bool ok = ctx.theorem_e_window() && ctx.theorem_f_window() && smax <= B && rmax < R && smin > 0 && rmin > 0;
  return {ok, fmt("max|S_k| %.3f <= %.3e, ", smax, B) + fmt("max|R_k| %.3f < %.3e, ", rmax, R) +
                  fmt("mins %.3e %.3e", smin, rmin)};
}

Outcome by_parts() {
  Options o;
  o.grid_depth = 60;
  const QContext ctx(0.5, o);
  const ScalarFunction x{[](double t) { return t; }, 0.0, 0.0};
  const ScalarFunction x2{[](double t) { return t * t; }, 0.0, 0.0};
  const ScalarFunction x3{[](double t) { return t * t * t; }, 0.0, 0.0};
  double worst = 0.0;
  for (auto v : {IbpVariant::upper, IbpVariant::lower}) {
    const IdentityCheck a = verify_ibp(x, x2, ctx, v), b = verify_ibp(x2, x3, ctx, v);
    worst = std::max({worst, a.residual / a.scale, b.residual / b.scale});
  }
  return {worst <= 1e-9, fmt("worst residual/scale %.2e", worst)};
}

Outcome holder() {
  const HolderReport a = estimate_holder(StockFunction::absolute().grid(0.5, 200));
  const HolderReport m = estimate_holder(StockFunction::monomial(2).grid(0.5, 200));
  const GridFunction step = StockFunction::step(0.3).grid(0.5, 200);
  const int n0 = step_index(0.5, 0.3) + 1;
  const HolderReport s = check_holder(step, 1.0, 5.0, n0);
  const bool ok = a.lambda_est >= 0.9 && a.lambda_est <= 1.1 && m.lambda_est >= 1.9 && m.lambda_est <= 2.1 &&
                  s.satisfied;
  return {ok, fmt("|x| %.4f, x^2 %.4f, ", a.lambda_est, m.lambda_est) +
                  fmt("step satisfied with n0=%g: ", n0) + (s.satisfied ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"orthogonality", orthogonality},
      {"zero certification", zero_brackets},
      {"reciprocal identity at zeros", reciprocal},
      {"finite recurrences", recurrences},
      {"difference relations and eigen-relation", difference_relations},
      {"Bessel connection", bessel},
      {"closed forms vs quadrature", closed_forms},
      {"on-grid reconstruction", on_grid},
      {"off-grid reconstruction", off_grid},
      {"negative control (sign)", negative_control},
      {"asymptotic factors", asymptotics},
      {"integration by parts", by_parts},
      {"Hoelder estimator", holder},
  };
  int failed = 0;
  int i = 0;
  for (const auto& [name, run] : criteria) {
    ++i;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2d %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i, name, o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
