#pragma once

// Diagnostics: q-Hölder regularity of grid data, decay of the coefficient
// integrals, on/off-grid convergence, orthogonality and the bound B.

#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qfourier/fourier.hpp"
#include "qfourier/qcore.hpp"
#include "qfourier/zeros.hpp"

namespace qfourier {

/// |f(±q^{n-1}) - f(±q^n)| <= M q^{lambda n} for n >= n0 on both branches.
struct HolderReport {
  /// +inf when every usable difference is zero.
  double lambda_est = std::numeric_limits<double>::infinity();
  double M_est = 0.0;
  int n0 = 1;
  bool fit_available = false;
  /// Differences that entered the fit.
  int points = 0;
  /// Result of check_holder for the supplied (M, lambda); for
  /// estimate_holder, whether the estimate holds from n0 on.
  bool satisfied = false;
  /// First index violating the supplied bound, if any.
  std::optional<int> first_violation;
  /// Indices n where a difference is exactly 0 (excluded from the fit).
  std::vector<int> zero_gap_indices;
  /// Isolated nonzero differences, excluded from the fit.
  std::vector<int> jump_indices;
  bool limits_match = false;
  bool lambda_above_half = false;
};

HolderReport check_holder(const GridFunction& f, double M, double lambda, int n0 = 1, double limit_tol = 1e-12);
HolderReport estimate_holder(const GridFunction& f, double limit_tol = 1e-12);

struct DecayFit {
  bool available = false;
  double c = std::numeric_limits<double>::quiet_NaN();
  /// log_q of the fitted constant.
  double offset = std::numeric_limits<double>::quiet_NaN();
  double rms_residual = std::numeric_limits<double>::quiet_NaN();
  int points = 0;
};

struct DecayOptions {
  int k_min = 2;
  /// c_lin must exceed 1 by this much before the linear hypothesis is
  /// reported as satisfied.
  double margin = 0.1;
};

/// Fits |I_k| ~ A q^{c k} (linear) and |I_k| ~ A q^{(k+c)^2} (quadratic;
/// (k+c-1/2)^2 for the sine family) to the quadrature integrals.
struct DecayReport {
  std::vector<int> k;
  /// log2 |int f C_q(q^{1/2} omega_k t) d_qt|; -inf for an exact zero.
  std::vector<double> log2_cosine;
  std::vector<double> log2_sine;
  /// Integrals below this are treated as quadrature noise.
  double noise_floor_log2 = 0.0;
  DecayFit lin_cosine, lin_sine, quad_cosine, quad_sine;
  /// Minimum over the families that could be fitted.
  DecayFit c_lin, c_quad;
  bool c_lin_gt_1 = false;
  bool c_quad_gt_0 = false;
};

DecayReport decay_diagnostics(const GridFunction& f, const ZeroTable& zt, int K, const QContext& ctx,
                              DecayOptions opts = {});

/// max over the first N nodes on both branches of |partial sum - f|.
struct GridError {
  double sup_error = 0.0;
  double at = 0.0;
  int nodes = 0;
};
GridError sup_error_on_grid(const FourierSeries& fs, const GridFunction& f, int K_used, int N);

struct PointError {
  std::complex<double> point;
  std::complex<double> value;
  std::complex<double> target;
  double error = std::numeric_limits<double>::infinity();
  bool overflow = false;
  std::string message;
};
/// Partial sum against `target` at arbitrary complex points; overflowing
/// points are reported, not thrown.
std::vector<PointError> offgrid_error(const FourierSeries& fs,
                                      const std::function<std::complex<double>(std::complex<double>)>& target,
                                      const std::vector<std::complex<double>>& points, int K_used = -1);

/// Gram matrices over modes 0..kmax (mode 0 is the constant 1 for the cosine
/// family and 0 for the sine family).
struct OrthogonalityReport {
  int kmax = 0;
  std::vector<std::vector<double>> cc, ss, cs;
  double max_offdiag_cc = 0.0;
  double max_offdiag_ss = 0.0;
  double max_cs = 0.0;
  /// max_k |<C_k, C_k> - mu_k| / |mu_k|, k >= 1.
  double max_diag_rel_cc = 0.0;
  /// max_k |<S_k, S_k> - q^{-1/2} mu_k| / |q^{-1/2} mu_k|.
  double max_diag_rel_ss = 0.0;
  /// |<1, 1> - 2|.
  double cc00_residual = 0.0;
  double max_mu = 0.0;
  bool passed(double tol = 1e-8) const;
};
OrthogonalityReport verify_orthogonality(const ZeroTable& zt, int kmax, const QContext& ctx);

/// 2/(q^2;q)_inf * sum_{m>=1} m q^{(m-1)^2}.
double lemma_bound_B(double q, const Options& opts = {});
/// 2/((1-q)(q;q)_inf).
double rk_bound(double q, const Options& opts = {});

/// int (delta f(q^{1/2} t)/delta t)^2 d_qt against 2(1-q)M^2/(1-q^{2 lambda - 1}).
struct EnergyCheck {
  double energy = 0.0;
  double bound = 0.0;
  bool holds = false;
};
EnergyCheck difference_energy(const ScalarFunction& f, double M, double lambda, const QContext& ctx);

}  // namespace qfourier
