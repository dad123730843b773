#pragma once

// q-calculus on the q-linear grid: Pochhammer symbols, the symmetric
// q-difference, Jackson integrals and the integration-by-parts checks.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "qfourier/bigfloat.hpp"

namespace qfourier {

struct Options {
  double series_tol = 0x1p-53;
  std::size_t max_terms = 100000;
  int grid_depth = 200;
  double root_tol = 1e-14;
};

/// Immutable numeric policy shared by every operation.
class QContext {
 public:
  explicit QContext(double q, Options options = {});

  double q() const noexcept { return q_; }
  const Options& options() const noexcept { return options_; }
  double series_tol() const noexcept { return options_.series_tol; }
  std::size_t max_terms() const noexcept { return options_.max_terms; }
  int grid_depth() const noexcept { return options_.grid_depth; }
  double root_tol() const noexcept { return options_.root_tol; }

  /// q <= (1/51)^(1/50): uniform convergence of the cosine/sine series is
  /// asserted only here.
  bool theorem_e_window() const noexcept { return q_ <= theorem_e_limit(); }
  /// q <= (1/50)^(1/49): bounds on C_q(omega_k) are asserted only here.
  bool theorem_f_window() const noexcept { return q_ <= theorem_f_limit(); }
  static double theorem_e_limit() noexcept;
  static double theorem_f_limit() noexcept;

  QContext with_grid_depth(int depth) const;
  QContext with_q(double q) const { return QContext(q, options_); }

 private:
  double q_;
  Options options_;
};

/// Values of f on V_q = {±q^(n-1)} plus one-sided limits at 0.
class GridFunction {
 public:
  GridFunction(double q, std::vector<double> pos_values, std::vector<double> neg_values, double limit_0_plus,
               double limit_0_minus);

  /// Samples f at ±q^(n-1), n = 1..depth.
  static GridFunction sample(const std::function<double(double)>& f, double q, int depth, double limit_0_plus,
                             double limit_0_minus);

  double q() const noexcept { return q_; }
  int depth() const noexcept { return static_cast<int>(pos_.size()); }
  /// f(q^(n-1)), 1 <= n <= depth.
  double pos(int n) const { return pos_.at(static_cast<std::size_t>(n - 1)); }
  /// f(-q^(n-1)), 1 <= n <= depth.
  double neg(int n) const { return neg_.at(static_cast<std::size_t>(n - 1)); }
  const std::vector<double>& pos_values() const noexcept { return pos_; }
  const std::vector<double>& neg_values() const noexcept { return neg_; }
  double limit_0_plus() const noexcept { return lim_plus_; }
  double limit_0_minus() const noexcept { return lim_minus_; }
  double sup_norm() const noexcept;

  /// Value at a grid abscissa; throws DomainError if x is not (to 8 ulp) a node.
  double at(double x) const;

 private:
  double q_;
  std::vector<double> pos_;
  std::vector<double> neg_;
  double lim_plus_;
  double lim_minus_;
};

/// A pointwise-evaluatable function with optional one-sided limits at 0.
struct ScalarFunction {
  std::function<double(double)> fn;
  std::optional<double> limit_0_plus;
  std::optional<double> limit_0_minus;

  double operator()(double x) const { return fn(x); }
};

inline constexpr std::size_t infinite_order = static_cast<std::size_t>(-1);

double q_pochhammer(double a, double q, std::size_t n);
std::complex<double> q_pochhammer(std::complex<double> a, double q, std::size_t n);
/// (a_1, ..., a_r; q)_n.
double q_pochhammer(std::span<const double> as, double q, std::size_t n);
double q_pochhammer(std::initializer_list<double> as, double q, std::size_t n);
/// (a; q)_inf truncated once |a q^j| < series_tol (and j >= 10).
double q_pochhammer_inf(double a, double q, const Options& opts = {});
std::complex<double> q_pochhammer_inf(std::complex<double> a, double q, const Options& opts = {});

mp::BigFloat q_pochhammer(const mp::BigFloat& a, const mp::BigFloat& q, std::size_t n);
mp::BigFloat q_pochhammer_inf(const mp::BigFloat& a, const mp::BigFloat& q);

double delta_op(const std::function<double(double)>& f, double x, double q);
std::complex<double> delta_op(const std::function<std::complex<double>(std::complex<double>)>& f,
                              std::complex<double> x, double q);
/// delta f(x) / delta x; DomainError at x = 0.
double delta_quotient(const std::function<double(double)>& f, double x, double q);
std::complex<double> delta_quotient(const std::function<std::complex<double>(std::complex<double>)>& f,
                                    std::complex<double> x, double q);

struct QIntegral {
  double value = 0.0;
  int nodes_used = 0;
  /// |a| (1-q) sum_{n >= nodes_used} q^n * sup|f|, when a bound on |f| is given.
  std::optional<double> tail_bound;
};

/// Jackson integral a(1-q) sum f(a q^n) q^n over n < grid_depth.
QIntegral q_integral_0a(const std::function<double(double)>& f, double a, const QContext& ctx,
                        std::optional<double> sup_f = std::nullopt);
/// (1-q) sum q^n [f(q^n) + f(-q^n)].
QIntegral q_integral_sym(const std::function<double(double)>& f, const QContext& ctx,
                         std::optional<double> sup_f = std::nullopt);
QIntegral q_integral_sym(const GridFunction& f, const QContext& ctx);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  /// Largest magnitude among the pieces combined; use residual / scale.
  double scale = 0.0;
};

enum class IbpVariant { upper, lower };

/// Integration by parts on [-1, 1]. `upper` pairs g(q^{1/2} x) with
/// f(q^{-1/2} x); `lower` swaps the shifts.
IdentityCheck verify_ibp(const ScalarFunction& f, const ScalarFunction& g, const QContext& ctx, IbpVariant variant);

/// int_{-1}^{1} delta f / delta x d_qx against its boundary form.
IdentityCheck verify_fundamental(const ScalarFunction& f, const QContext& ctx);

}  // namespace qfourier
