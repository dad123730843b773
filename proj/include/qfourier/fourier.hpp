#pragma once

// q-Fourier expansions on [-1, 1]:
//   f(x) ~ a0/2 + sum_k a_k C_q(q^{1/2} omega_k x) + b_k S_q(q omega_k x).
// Coefficients come from Jackson quadrature on the grid or from the closed
// forms of the stock functions.

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "qfourier/bigfloat.hpp"
#include "qfourier/functions.hpp"
#include "qfourier/qcore.hpp"
#include "qfourier/zeros.hpp"

namespace qfourier {

struct FourierSeries {
  double q = 0.5;
  std::shared_ptr<const ZeroTable> zeros;
  mp::BigFloat a0;
  /// Index k-1 holds mode k.
  std::vector<mp::BigFloat> a;
  std::vector<mp::BigFloat> b;
  /// Normalisers (1-q) C_q(q^{1/2} omega_k) S_q'(omega_k).
  std::vector<mp::BigFloat> mu;
  std::string a0_provenance;
  std::vector<std::string> provenance;

  int size() const noexcept { return static_cast<int>(a.size()); }
  double a_d(int k) const { return a.at(static_cast<std::size_t>(k - 1)).to_double(); }
  double b_d(int k) const { return b.at(static_cast<std::size_t>(k - 1)).to_double(); }
  double mu_d(int k) const { return mu.at(static_cast<std::size_t>(k - 1)).to_double(); }
  /// PreconditionError on inconsistent lengths, a missing table or mu = 0.
  void validate() const;
};

/// Mode values at the positive grid nodes:
///   c[k-1][n] = C_q(q^{n+1/2} omega_k), s[k-1][n] = S_q(q^{n+1} omega_k),
/// for n = 0..depth-1, with absolute error far below q^depth.
struct NodeModes {
  double q = 0.5;
  int depth = 0;
  std::vector<std::vector<mp::BigFloat>> c;
  std::vector<std::vector<mp::BigFloat>> s;
  /// log2 of the absolute accuracy requested per node value.
  double abs_log2 = 0.0;

  int size() const noexcept { return static_cast<int>(c.size()); }
};

NodeModes node_modes(const ZeroTable& zt, int K, int depth);

mp::BigFloat mu_k(const ZeroTable& zt, int k);

/// int f(t) C_q(q^{1/2} omega_k t) d_qt and int f(t) S_q(q omega_k t) d_qt.
struct ModeIntegrals {
  mp::BigFloat cosine;
  mp::BigFloat sine;
};
ModeIntegrals mode_integrals(const GridFunction& f, int k, const NodeModes& modes);

/// a0 = int_{-1}^{1} f d_qt.
mp::BigFloat coeff_a0_mp(const GridFunction& f, const QContext& ctx);
double coeff_a0(const GridFunction& f, const QContext& ctx);
double coeff_ak(const GridFunction& f, int k, const ZeroTable& zt, const QContext& ctx);
double coeff_bk(const GridFunction& f, int k, const ZeroTable& zt, const QContext& ctx);

/// Quadrature coefficients for modes 1..K. The zero table must hold K modes.
FourierSeries compute_series(const GridFunction& f, std::shared_ptr<const ZeroTable> zt, int K,
                             const QContext& ctx);
FourierSeries compute_series(const GridFunction& f, int K, const QContext& ctx);

/// Closed-form coefficients of a stock function.
FourierSeries closed_form_series(const StockFunction& f, std::shared_ptr<const ZeroTable> zt, int K);

/// Coefficient-wise comparison of two expansions over a common K.
struct SeriesComparison {
  /// Largest |x - y| / |y| over coefficients with |y| above the floor.
  double max_rel = 0.0;
  /// Largest |x - y| over coefficients at or below the floor.
  double max_abs_small = 0.0;
  int worst_k = -1;
  bool agree = false;
};
/// `reference` supplies y. Coefficients with |y| <= abs_floor are compared
/// absolutely against abs_floor; the rest relatively against rel_tol.
SeriesComparison compare_series(const FourierSeries& candidate, const FourierSeries& reference, double rel_tol,
                                double abs_floor);

/// Partial sum over modes 1..K_used (all modes if K_used < 0).
mp::BigFloat eval_partial_sum_mp(const FourierSeries& fs, const mp::BigFloat& x, int K_used = -1);
mp::BigComplex eval_partial_sum_mp(const FourierSeries& fs, const mp::BigComplex& x, int K_used = -1);
/// OverflowError naming the first mode whose term leaves the double range.
double eval_partial_sum(const FourierSeries& fs, double x, int K_used = -1);
std::complex<double> eval_partial_sum(const FourierSeries& fs, std::complex<double> x, int K_used = -1);

/// mu_k a_k(f) = -(1-q)/(q^{1/2} omega_k) int S_q(q omega_k t) delta[f(q^{1/2} .)](t)/delta t d_qt.
IdentityCheck check_cosine_by_parts(const ScalarFunction& f, int k, const NodeModes& modes, const ZeroTable& zt);
/// int f S_q(q omega_k t) = (q-1)/(q omega_k) [q^{1/2}(f(1/q) - f(-1/q)) C_q(q^{1/2} omega_k)
///                          - int C_q(q^{1/2} omega_k t) delta[f(. / q^{1/2})](t)/delta t d_qt].
IdentityCheck check_sine_by_parts(const ScalarFunction& f, int k, const NodeModes& modes, const ZeroTable& zt);

}  // namespace qfourier
