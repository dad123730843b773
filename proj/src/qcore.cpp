#include "qfourier/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qfourier/error.hpp"
#include "qfourier/summation.hpp"

namespace qfourier {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

QContext::QContext(double q, Options options) : q_(q), options_(options) {
  require(std::isfinite(q) && q > 0.0 && q < 1.0, "q must lie in (0, 1), got " + std::to_string(q));
  require(options_.series_tol > 0.0 && std::isfinite(options_.series_tol), "series_tol must be positive");
  require(options_.root_tol > 0.0 && std::isfinite(options_.root_tol), "root_tol must be positive");
  require(options_.max_terms >= 1, "max_terms must be at least 1");
  require(options_.grid_depth >= 1, "grid_depth must be at least 1");
}

double QContext::theorem_e_limit() noexcept {
  static const double v = std::pow(1.0 / 51.0, 1.0 / 50.0);
  return v;
}

double QContext::theorem_f_limit() noexcept {
  static const double v = std::pow(1.0 / 50.0, 1.0 / 49.0);
  return v;
}

QContext QContext::with_grid_depth(int depth) const {
  Options o = options_;
  o.grid_depth = depth;
  return QContext(q_, o);
}

GridFunction::GridFunction(double q, std::vector<double> pos_values, std::vector<double> neg_values,
                           double limit_0_plus, double limit_0_minus)
    : q_(q),
      pos_(std::move(pos_values)),
      neg_(std::move(neg_values)),
      lim_plus_(limit_0_plus),
      lim_minus_(limit_0_minus) {
  require(std::isfinite(q) && q > 0.0 && q < 1.0, "GridFunction: q must lie in (0, 1)");
  require(!pos_.empty(), "GridFunction: depth must be positive");
  require(pos_.size() == neg_.size(), "GridFunction: pos_values and neg_values differ in length");
  auto finite = [](double v) { return std::isfinite(v); };
  require(std::all_of(pos_.begin(), pos_.end(), finite) && std::all_of(neg_.begin(), neg_.end(), finite),
          "GridFunction: values must be finite");
  require(std::isfinite(lim_plus_) && std::isfinite(lim_minus_), "GridFunction: limits at 0 must be finite");
}

GridFunction GridFunction::sample(const std::function<double(double)>& f, double q, int depth, double limit_0_plus,
                                  double limit_0_minus) {
  require(depth >= 1, "GridFunction: depth must be positive");
  std::vector<double> pos(static_cast<std::size_t>(depth));
  std::vector<double> neg(pos.size());
  double x = 1.0;
  for (std::size_t n = 0; n < pos.size(); ++n) {
    pos[n] = f(x);
    neg[n] = f(-x);
    x *= q;
  }
  return GridFunction(q, std::move(pos), std::move(neg), limit_0_plus, limit_0_minus);
}

double GridFunction::sup_norm() const noexcept {
  double s = 0.0;
  for (double v : pos_) s = std::max(s, std::fabs(v));
  for (double v : neg_) s = std::max(s, std::fabs(v));
  return s;
}

double GridFunction::at(double x) const {
  if (x == 0.0) throw DomainError("GridFunction::at: 0 is not a grid node; use the one-sided limits");
  const double ax = std::fabs(x);
  const int guess = static_cast<int>(std::lround(std::log(ax) / std::log(q_)));
  for (int n = std::max(0, guess - 1); n <= guess + 1 && n < depth(); ++n) {
    const double node = std::pow(q_, n);
    if (std::fabs(node - ax) <= 8.0 * std::numeric_limits<double>::epsilon() * node) {
      return x > 0.0 ? pos_[static_cast<std::size_t>(n)] : neg_[static_cast<std::size_t>(n)];
    }
  }
  throw DomainError("GridFunction::at: " + std::to_string(x) + " is not a stored grid node");
}

double q_pochhammer(double a, double q, std::size_t n) {
  if (n == infinite_order) return q_pochhammer_inf(a, q);
  double p = 1.0;
  double aq = a;
  for (std::size_t j = 0; j < n; ++j) {
    p *= 1.0 - aq;
    aq *= q;
  }
  return p;
}

std::complex<double> q_pochhammer(std::complex<double> a, double q, std::size_t n) {
  if (n == infinite_order) return q_pochhammer_inf(a, q);
  std::complex<double> p = 1.0;
  std::complex<double> aq = a;
  for (std::size_t j = 0; j < n; ++j) {
    p *= 1.0 - aq;
    aq *= q;
  }
  return p;
}

double q_pochhammer(std::span<const double> as, double q, std::size_t n) {
  double p = 1.0;
  for (double a : as) p *= q_pochhammer(a, q, n);
  return p;
}

double q_pochhammer(std::initializer_list<double> as, double q, std::size_t n) {
  return q_pochhammer(std::span<const double>(as.begin(), as.size()), q, n);
}

namespace {

template <class T>
T pochhammer_inf_impl(T a, double q, const Options& opts) {
  T p = 1.0;
  T aq = a;
  for (std::size_t j = 0; j < opts.max_terms; ++j) {
    if (j >= 10 && std::abs(aq) < opts.series_tol) return p;
    p *= 1.0 - aq;
    aq *= q;
  }
  throw NonConvergenceError("q_pochhammer_inf: max_terms reached", std::complex<double>(p), opts.max_terms);
}

}  // namespace

double q_pochhammer_inf(double a, double q, const Options& opts) {
  require(q > 0.0 && q < 1.0, "q_pochhammer_inf: q must lie in (0, 1)");
  return pochhammer_inf_impl(a, q, opts);
}

std::complex<double> q_pochhammer_inf(std::complex<double> a, double q, const Options& opts) {
  require(q > 0.0 && q < 1.0, "q_pochhammer_inf: q must lie in (0, 1)");
  return pochhammer_inf_impl(a, q, opts);
}

mp::BigFloat q_pochhammer(const mp::BigFloat& a, const mp::BigFloat& q, std::size_t n) {
  const mp::Bits bits = std::max(a.bits(), q.bits());
  mp::BigFloat p(1.0, bits);
  mp::BigFloat aq = a;
  aq.set_bits(bits);
  for (std::size_t j = 0; j < n; ++j) {
    p *= 1.0 - aq;
    aq *= q;
  }
  return p;
}

mp::BigFloat q_pochhammer_inf(const mp::BigFloat& a, const mp::BigFloat& q) {
  require(q > 0.0 && q < 1.0, "q_pochhammer_inf: q must lie in (0, 1)");
  const mp::Bits bits = std::max(a.bits(), q.bits());
  const double stop = -static_cast<double>(bits) - 4.0;
  mp::BigFloat p(1.0, bits);
  mp::BigFloat aq = a;
  aq.set_bits(bits);
  for (std::size_t j = 0;; ++j) {
    if (j >= 10 && aq.log2_abs() < stop) return p;
    p *= 1.0 - aq;
    aq *= q;
  }
}

double delta_op(const std::function<double(double)>& f, double x, double q) {
  const double s = std::sqrt(q);
  return f(s * x) - f(x / s);
}

std::complex<double> delta_op(const std::function<std::complex<double>(std::complex<double>)>& f,
                              std::complex<double> x, double q) {
  const double s = std::sqrt(q);
  return f(s * x) - f(x / s);
}

double delta_quotient(const std::function<double(double)>& f, double x, double q) {
  if (x == 0.0) throw DomainError("delta_quotient is undefined at x = 0");
  const double s = std::sqrt(q);
  return delta_op(f, x, q) / (x * (s - 1.0 / s));
}

std::complex<double> delta_quotient(const std::function<std::complex<double>(std::complex<double>)>& f,
                                    std::complex<double> x, double q) {
  if (x == 0.0) throw DomainError("delta_quotient is undefined at x = 0");
  const double s = std::sqrt(q);
  return delta_op(f, x, q) / (x * (s - 1.0 / s));
}

namespace {

// Shared node loop: term(n) is the n-th weighted summand without the (1-q)
// prefactor. Stops early after three consecutive negligible terms.
template <class Term>
QIntegral jackson_sum(Term term, double scale, const QContext& ctx, std::optional<double> tail_sup) {
  const double q = ctx.q();
  NeumaierSum acc;
  int quiet = 0;
  int n = 0;
  for (; n < ctx.grid_depth(); ++n) {
    const double t = term(n);
    acc.add(t);
    quiet = std::fabs(t) < ctx.series_tol() * std::fabs(acc.value()) ? quiet + 1 : 0;
    if (n >= 10 && quiet >= 3) {
      ++n;
      break;
    }
  }
  QIntegral r;
  r.value = scale * (1.0 - q) * acc.value();
  r.nodes_used = n;
  if (tail_sup) r.tail_bound = std::fabs(scale) * *tail_sup * std::pow(q, n);
  return r;
}

}  // namespace

QIntegral q_integral_0a(const std::function<double(double)>& f, double a, const QContext& ctx,
                        std::optional<double> sup_f) {
  const double q = ctx.q();
  double qn = 1.0;
  return jackson_sum(
      [&](int) {
        const double t = f(a * qn) * qn;
        qn *= q;
        return t;
      },
      a, ctx, sup_f);
}

QIntegral q_integral_sym(const std::function<double(double)>& f, const QContext& ctx, std::optional<double> sup_f) {
  const double q = ctx.q();
  double qn = 1.0;
  return jackson_sum(
      [&](int) {
        const double t = (f(qn) + f(-qn)) * qn;
        qn *= q;
        return t;
      },
      1.0, ctx, sup_f ? std::optional<double>(2.0 * *sup_f) : std::nullopt);
}

QIntegral q_integral_sym(const GridFunction& f, const QContext& ctx) {
  const double q = ctx.q();
  const int n_max = std::min(ctx.grid_depth(), f.depth());
  NeumaierSum acc;
  double qn = 1.0;
  for (int n = 0; n < n_max; ++n) {
    acc.add((f.pos_values()[static_cast<std::size_t>(n)] + f.neg_values()[static_cast<std::size_t>(n)]) * qn);
    qn *= q;
  }
  QIntegral r;
  r.value = (1.0 - q) * acc.value();
  r.nodes_used = n_max;
  r.tail_bound = 2.0 * f.sup_norm() * qn;
  return r;
}

namespace {

double boundary_term(const ScalarFunction& f, const ScalarFunction* g, double q, const char* who) {
  if (!f.limit_0_plus || !f.limit_0_minus || (g && (!g->limit_0_plus || !g->limit_0_minus))) {
    throw PreconditionError(std::string(who) + ": one-sided limits at 0 are required");
  }
  const double s = std::sqrt(q);
  auto prod = [&](double x) { return f(x) * (g ? (*g)(x) : 1.0); };
  const double at_plus = *f.limit_0_plus * (g ? *g->limit_0_plus : 1.0);
  const double at_minus = *f.limit_0_minus * (g ? *g->limit_0_minus : 1.0);
  return s * ((prod(1.0 / s) - prod(-1.0 / s)) - (at_plus - at_minus));
}

}  // namespace

IdentityCheck verify_ibp(const ScalarFunction& f, const ScalarFunction& g, const QContext& ctx, IbpVariant variant) {
  const double q = ctx.q();
  const double s = std::sqrt(q);
  const double boundary = boundary_term(f, &g, q, "verify_ibp");
  const double g_shift = variant == IbpVariant::upper ? s : 1.0 / s;
  const double f_shift = variant == IbpVariant::upper ? 1.0 / s : s;

  const double lhs =
      q_integral_sym([&](double x) { return g(g_shift * x) * delta_quotient(f.fn, x, q); }, ctx).value;
  const double moved =
      q_integral_sym([&](double x) { return f(f_shift * x) * delta_quotient(g.fn, x, q); }, ctx).value;

  IdentityCheck r;
  r.lhs = lhs;
  r.rhs = -moved + boundary;
  r.residual = std::fabs(r.lhs - r.rhs);
  r.scale = std::max({std::fabs(lhs), std::fabs(moved), std::fabs(boundary), 1e-300});
  return r;
}

IdentityCheck verify_fundamental(const ScalarFunction& f, const QContext& ctx) {
  const double q = ctx.q();
  IdentityCheck r;
  r.rhs = boundary_term(f, nullptr, q, "verify_fundamental");
  r.lhs = q_integral_sym([&](double x) { return delta_quotient(f.fn, x, q); }, ctx).value;
  r.residual = std::fabs(r.lhs - r.rhs);
  r.scale = std::max({std::fabs(r.lhs), std::fabs(r.rhs), 1e-300});
  return r;
}

}  // namespace qfourier
