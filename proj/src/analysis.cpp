#include "qfourier/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "qfourier/error.hpp"

namespace qfourier {

namespace {

struct Diff {
  int n;
  double value;
};

// d_n = |f(s q^{n-1}) - f(s q^n)|, n = 1..depth-1, on one branch.
std::vector<double> branch_diffs(const std::vector<double>& v) {
  std::vector<double> d;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) d.push_back(std::fabs(v[i] - v[i + 1]));
  return d;
}

bool limits_close(const GridFunction& f, double tol) {
  return std::fabs(f.limit_0_plus() - f.limit_0_minus()) <= tol;
}

}  // namespace

HolderReport estimate_holder(const GridFunction& f, double limit_tol) {
  HolderReport r;
  r.limits_match = limits_close(f, limit_tol);
  const double lq = std::log(f.q());
  std::vector<Diff> usable;
  int last_jump = 0;
  for (const auto* branch : {&f.pos_values(), &f.neg_values()}) {
    const std::vector<double> d = branch_diffs(*branch);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const int n = static_cast<int>(i) + 1;
      if (d[i] == 0.0) {
        r.zero_gap_indices.push_back(n);
        continue;
      }
      const bool left_zero = i == 0 || d[i - 1] == 0.0;
      const bool right_zero = i + 1 == d.size() || d[i + 1] == 0.0;
      if (left_zero && right_zero) {
        if (std::find(r.jump_indices.begin(), r.jump_indices.end(), n) == r.jump_indices.end()) {
          r.jump_indices.push_back(n);
        }
        last_jump = std::max(last_jump, n);
        continue;
      }
      if (d[i] < 1e-300) continue;
      usable.push_back({n, d[i]});
    }
  }
  std::sort(r.jump_indices.begin(), r.jump_indices.end());
  std::sort(r.zero_gap_indices.begin(), r.zero_gap_indices.end());
  r.zero_gap_indices.erase(std::unique(r.zero_gap_indices.begin(), r.zero_gap_indices.end()), r.zero_gap_indices.end());
  r.n0 = last_jump + 1;
  r.points = static_cast<int>(usable.size());
  if (usable.empty()) {
    r.lambda_est = std::numeric_limits<double>::infinity();
    r.M_est = 0.0;
    r.satisfied = true;
    r.lambda_above_half = true;
    return r;
  }
  if (usable.size() < 3) {
    r.lambda_est = std::numeric_limits<double>::quiet_NaN();
    r.M_est = std::numeric_limits<double>::quiet_NaN();
    r.satisfied = false;
    return r;
  }
  // log_q d_n = lambda n + log_q M.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const Diff& p : usable) {
    const double x = p.n;
    const double y = std::log(p.value) / lq;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(usable.size());
  const double den = m * sxx - sx * sx;
  if (den == 0.0) {
    r.lambda_est = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  r.fit_available = true;
  r.lambda_est = (m * sxy - sx * sy) / den;
  double M = 0.0;
  for (const Diff& p : usable) {
    if (p.n < r.n0) continue;
    M = std::max(M, p.value / std::pow(f.q(), r.lambda_est * p.n));
  }
  r.M_est = M;
  r.satisfied = true;
  r.lambda_above_half = r.lambda_est > 0.5;
  return r;
}

HolderReport check_holder(const GridFunction& f, double M, double lambda, int n0, double limit_tol) {
  if (!(M >= 0.0) || !std::isfinite(lambda)) throw DomainError("check_holder: need M >= 0 and finite lambda");
  HolderReport r = estimate_holder(f, limit_tol);
  // n = 0 would need f(q^{-1}), which is off the grid.
  r.n0 = std::max(n0, 1);
  r.lambda_above_half = lambda > 0.5;
  r.satisfied = true;
  r.first_violation.reset();
  for (const auto* branch : {&f.pos_values(), &f.neg_values()}) {
    const std::vector<double> d = branch_diffs(*branch);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const int n = static_cast<int>(i) + 1;
      if (n < r.n0) continue;
      const double bound = M * std::pow(f.q(), lambda * n);
      if (d[i] > bound * (1.0 + 1e-12)) {
        r.satisfied = false;
        if (!r.first_violation || n < *r.first_violation) r.first_violation = n;
        break;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Point {
  double x, y, w;
};

DecayFit weighted_line(const std::vector<Point>& pts) {
  DecayFit fit;
  fit.points = static_cast<int>(pts.size());
  if (pts.size() < 3) return fit;
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const Point& p : pts) {
    sw += p.w;
    sx += p.w * p.x;
    sy += p.w * p.y;
    sxx += p.w * p.x * p.x;
    sxy += p.w * p.x * p.y;
  }
  const double den = sw * sxx - sx * sx;
  if (!(std::fabs(den) > 0.0)) return fit;
  const double slope = (sw * sxy - sx * sy) / den;
  const double icpt = (sy - slope * sx) / sw;
  double rss = 0.0;
  for (const Point& p : pts) {
    const double e = p.y - (slope * p.x + icpt);
    rss += p.w * e * e;
  }
  fit.available = true;
  fit.c = slope;
  fit.offset = icpt;
  fit.rms_residual = std::sqrt(rss / sw);
  return fit;
}

DecayFit fit_family(const std::vector<int>& ks, const std::vector<double>& l2, double floor_l2, double log2q,
                    int k_min, bool quadratic, double shift) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < k_min || !std::isfinite(l2[i]) || l2[i] < floor_l2 + 4.0) continue;
    const double k = ks[i];
    const double yq = l2[i] / log2q;
    const double w = std::min(1.0, (l2[i] - floor_l2) / 32.0);
    pts.push_back({k, quadratic ? yq - k * k : yq, w});
  }
  DecayFit fit = weighted_line(pts);
  if (fit.available && quadratic) {
    // y - k^2 = 2 (c - shift) k + (c - shift)^2 + log_q A.
    const double cs = fit.c / 2.0;
    fit.offset -= cs * cs;
    fit.c = cs + shift;
  }
  return fit;
}

DecayFit smaller(const DecayFit& a, const DecayFit& b) {
  if (!a.available) return b;
  if (!b.available) return a;
  return a.c <= b.c ? a : b;
}

}  // namespace

DecayReport decay_diagnostics(const GridFunction& f, const ZeroTable& zt, int K, const QContext& ctx,
                              DecayOptions opts) {
  if (K > zt.size()) throw PreconditionError("decay_diagnostics: zero table too short");
  const int depth = std::min(f.depth(), ctx.grid_depth());
  const NodeModes modes = node_modes(zt, K, depth);
  DecayReport r;
  const double log2q = std::log2(f.q());
  const double sup = std::max(f.sup_norm(), std::numeric_limits<double>::min());
  r.noise_floor_log2 = std::log2(sup) + depth * log2q + 8.0;
  for (int k = 1; k <= K; ++k) {
    const ModeIntegrals mi = mode_integrals(f, k, modes);
    r.k.push_back(k);
    r.log2_cosine.push_back(mi.cosine.is_zero() ? -std::numeric_limits<double>::infinity() : mi.cosine.log2_abs());
    r.log2_sine.push_back(mi.sine.is_zero() ? -std::numeric_limits<double>::infinity() : mi.sine.log2_abs());
  }
  r.lin_cosine = fit_family(r.k, r.log2_cosine, r.noise_floor_log2, log2q, opts.k_min, false, 0.0);
  r.lin_sine = fit_family(r.k, r.log2_sine, r.noise_floor_log2, log2q, opts.k_min, false, 0.0);
  r.quad_cosine = fit_family(r.k, r.log2_cosine, r.noise_floor_log2, log2q, opts.k_min, true, 0.0);
  r.quad_sine = fit_family(r.k, r.log2_sine, r.noise_floor_log2, log2q, opts.k_min, true, 0.5);
  r.c_lin = smaller(r.lin_cosine, r.lin_sine);
  r.c_quad = smaller(r.quad_cosine, r.quad_sine);
  r.c_lin_gt_1 = r.c_lin.available && r.c_lin.c > 1.0 + opts.margin;
  r.c_quad_gt_0 = r.c_quad.available && r.c_quad.c > opts.margin;
  return r;
}

// ---------------------------------------------------------------------------

GridError sup_error_on_grid(const FourierSeries& fs, const GridFunction& f, int K_used, int N) {
  if (N < 1 || N > f.depth()) throw DomainError("sup_error_on_grid: N outside 1..depth");
  if (f.q() != fs.q) throw PreconditionError("sup_error_on_grid: q mismatch");
  GridError out;
  const mp::BigFloat& q = fs.zeros->q_mp();
  for (int n = 1; n <= N; ++n) {
    const mp::BigFloat x = mp::pow(q, static_cast<long>(n - 1));
    for (int s : {1, -1}) {
      const mp::BigFloat xs = s > 0 ? x : -x;
      const double target = s > 0 ? f.pos(n) : f.neg(n);
      const double err = mp::abs(eval_partial_sum_mp(fs, xs, K_used) - target).to_double();
      if (err > out.sup_error || std::isnan(err)) {
        out.sup_error = err;
        out.at = xs.to_double();
      }
    }
  }
  out.nodes = 2 * N;
  return out;
}

std::vector<PointError> offgrid_error(const FourierSeries& fs,
                                      const std::function<std::complex<double>(std::complex<double>)>& target,
                                      const std::vector<std::complex<double>>& points, int K_used) {
  std::vector<PointError> out;
  for (const auto& x : points) {
    PointError p;
    p.point = x;
    p.target = target(x);
    try {
      p.value = eval_partial_sum(fs, x, K_used);
      p.error = std::abs(p.value - p.target);
    } catch (const OverflowError& e) {
      p.overflow = true;
      p.message = e.what();
      p.value = {std::numeric_limits<double>::infinity(), 0.0};
    }
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------

bool OrthogonalityReport::passed(double tol) const {
  const double abs_tol = tol * max_mu;
  return max_offdiag_cc <= abs_tol && max_offdiag_ss <= abs_tol && max_cs <= abs_tol && max_diag_rel_cc <= tol &&
         max_diag_rel_ss <= tol && cc00_residual <= tol;
}

OrthogonalityReport verify_orthogonality(const ZeroTable& zt, int kmax, const QContext& ctx) {
  if (kmax < 1 || kmax > zt.size()) throw DomainError("verify_orthogonality: kmax outside 1..table size");
  const int depth = ctx.grid_depth();
  const NodeModes modes = node_modes(zt, kmax, depth);
  const mp::Bits bits = static_cast<mp::Bits>(std::max(128.0, -modes.abs_log2 + 32.0));
  const mp::BigFloat q(zt.q(), bits);
  const mp::BigFloat one(1.0, bits);
  const mp::BigFloat zero(0.0, bits);
  auto cval = [&](int k, int n) -> const mp::BigFloat& {
    return k == 0 ? one : modes.c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(n)];
  };
  auto sval = [&](int k, int n) -> const mp::BigFloat& {
    return k == 0 ? zero : modes.s[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(n)];
  };
  OrthogonalityReport r;
  r.kmax = kmax;
  const std::size_t dim = static_cast<std::size_t>(kmax + 1);
  r.cc.assign(dim, std::vector<double>(dim, 0.0));
  r.ss = r.cc;
  r.cs = r.cc;
  for (int k = 0; k <= kmax; ++k) {
    for (int m = 0; m <= kmax; ++m) {
      mp::BigFloat cc(0.0, bits), ss(0.0, bits), cs(0.0, bits);
      mp::BigFloat qn(1.0, bits);
      for (int n = 0; n < depth; ++n) {
        // Nodes +q^n and -q^n: C_q even, S_q odd.
        const mp::BigFloat c2 = cval(k, n) * cval(m, n);
        const mp::BigFloat s2 = sval(k, n) * sval(m, n);
        cc += qn * (c2 + c2);
        ss += qn * (s2 + s2);
        cs += qn * (cval(k, n) * sval(m, n) + cval(k, n) * (-sval(m, n)));
        qn *= q;
      }
      const std::size_t i = static_cast<std::size_t>(k), j = static_cast<std::size_t>(m);
      r.cc[i][j] = (cc * (1.0 - q)).to_double();
      r.ss[i][j] = (ss * (1.0 - q)).to_double();
      r.cs[i][j] = (cs * (1.0 - q)).to_double();
      r.max_cs = std::max(r.max_cs, std::fabs(r.cs[i][j]));
      if (k != m) {
        r.max_offdiag_cc = std::max(r.max_offdiag_cc, std::fabs(r.cc[i][j]));
        r.max_offdiag_ss = std::max(r.max_offdiag_ss, std::fabs(r.ss[i][j]));
      }
    }
  }
  r.cc00_residual = std::fabs(r.cc[0][0] - 2.0);
  const double rsq = 1.0 / std::sqrt(zt.q());
  for (int k = 1; k <= kmax; ++k) {
    const double mu = mu_k(zt, k).to_double();
    const std::size_t i = static_cast<std::size_t>(k);
    r.max_mu = std::max(r.max_mu, std::fabs(mu));
    r.max_diag_rel_cc = std::max(r.max_diag_rel_cc, std::fabs(r.cc[i][i] - mu) / std::fabs(mu));
    r.max_diag_rel_ss = std::max(r.max_diag_rel_ss, std::fabs(r.ss[i][i] - rsq * mu) / std::fabs(rsq * mu));
  }
  // <S_0, S_0> = 0 belongs to the "k = 0" case, which is off the mu scale.
  r.max_offdiag_ss = std::max(r.max_offdiag_ss, std::fabs(r.ss[0][0]));
  return r;
}

// ---------------------------------------------------------------------------

double lemma_bound_B(double q, const Options& opts) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("lemma_bound_B: q must lie in (0, 1)");
  double s = 0.0;
  for (std::size_t m = 1; m < opts.max_terms; ++m) {
    const double t = static_cast<double>(m) * std::pow(q, static_cast<double>((m - 1) * (m - 1)));
    s += t;
    if (m > 2 && t < opts.series_tol * s) break;
  }
  return 2.0 * s / q_pochhammer_inf(q * q, q, opts);
}

double rk_bound(double q, const Options& opts) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("rk_bound: q must lie in (0, 1)");
  return 2.0 / ((1.0 - q) * q_pochhammer_inf(q, q, opts));
}

EnergyCheck difference_energy(const ScalarFunction& f, double M, double lambda, const QContext& ctx) {
  if (!(lambda > 0.5)) throw DomainError("difference_energy: the bound needs lambda > 1/2");
  const double q = ctx.q();
  const double d = std::sqrt(q) - 1.0 / std::sqrt(q);
  auto g2 = [&](double t) {
    const double g = (f(q * t) - f(t)) / (t * d);
    return g * g;
  };
  EnergyCheck r;
  r.energy = q_integral_sym(g2, ctx).value;
  r.bound = 2.0 * (1.0 - q) * M * M / (1.0 - std::pow(q, 2.0 * lambda - 1.0));
  r.holds = r.energy <= r.bound * (1.0 + 1e-12);
  return r;
}

}  // namespace qfourier
