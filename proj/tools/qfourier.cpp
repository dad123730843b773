// qfourier: zero tables, expansions, verification suites and convergence runs.
//
// Exit codes: 0 all gated checks passed, 2 a numerical check failed, 1 usage
// or configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qfourier/analysis.hpp"
#include "qfourier/error.hpp"
#include "qfourier/fourier.hpp"
#include "qfourier/functions.hpp"
#include "qfourier/identities.hpp"
#include "qfourier/io.hpp"
#include "qfourier/theorem_d.hpp"
#include "qfourier/zeros.hpp"

using namespace qfourier;
using io::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double q = 0.5;
  int k = 8;
  int kmin = 1;
  int kmax = 40;
  int depth = 200;
  double series_tol = 0x1p-53;
  double root_tol = 1e-14;
  std::size_t max_terms = 100000;
  int m = 2;
  double a = 0.3;
  int n_points = 20;
  double tol = 1e-6;
  std::string points = "0.3333,1.2";
  std::string qs = "0.3,0.5,0.7,0.8,0.9";
  std::string file;
  std::string format = "json";
  std::string output;
  std::string method = "closed";

  Options options() const {
    Options o;
    o.series_tol = series_tol;
    o.root_tol = root_tol;
    o.max_terms = max_terms;
    o.grid_depth = depth;
    return o;
  }
  QContext context() const {
    try {
      return QContext(q, options());
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
};

void apply_config_file(const std::string& path, RunConfig& cfg) {
  json j;
  try {
    j = io::read_json_file(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!j.is_object()) throw UsageError(path + ": top level must be an object");
  static const std::set<std::string> known = {"q",      "k",      "kmin",  "kmax", "depth",  "series_tol",
                                              "root_tol", "max_terms", "m", "a", "n_points", "tol",
                                              "points", "qs",     "file",  "format", "output", "method"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw UsageError(path + ": unknown key '" + it.key() + "'");
  }
  try {
    auto get = [&](const char* key, auto& dst) {
      if (j.contains(key)) j.at(key).get_to(dst);
    };
    get("q", cfg.q);
    get("k", cfg.k);
    get("kmin", cfg.kmin);
    get("kmax", cfg.kmax);
    get("depth", cfg.depth);
    get("series_tol", cfg.series_tol);
    get("root_tol", cfg.root_tol);
    get("max_terms", cfg.max_terms);
    get("m", cfg.m);
    get("a", cfg.a);
    get("n_points", cfg.n_points);
    get("tol", cfg.tol);
    get("points", cfg.points);
    get("qs", cfg.qs);
    get("file", cfg.file);
    get("format", cfg.format);
    get("output", cfg.output);
    get("method", cfg.method);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void validate(const RunConfig& cfg) {
  if (!(cfg.q > 0.0 && cfg.q < 1.0)) throw UsageError("--q must lie in (0, 1)");
  if (cfg.k < 1) throw UsageError("--k must be at least 1");
  if (cfg.kmax < 1 || cfg.kmin < 1 || cfg.kmin > cfg.kmax) throw UsageError("need 1 <= kmin <= kmax");
  if (cfg.depth < 2) throw UsageError("--depth must be at least 2");
  if (!(cfg.series_tol > 0.0 && cfg.series_tol < 1.0)) throw UsageError("--series-tol must lie in (0, 1)");
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
  if (cfg.method != "closed" && cfg.method != "quadrature") throw UsageError("--method must be closed or quadrature");
  if (cfg.n_points < 1 || cfg.n_points > cfg.depth) throw UsageError("--n-points must lie in 1..depth");
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + tok + "'");
    }
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

// "x", "x+yi", "x-yi" or "yi".
std::vector<std::complex<double>> parse_points(const std::string& text) {
  std::vector<std::complex<double>> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      if (!tok.empty() && tok.back() == 'i') {
        const std::string body = tok.substr(0, tok.size() - 1);
        std::size_t split = body.find_last_of("+-");
        if (split == std::string::npos || split == 0 || body[split - 1] == 'e' || body[split - 1] == 'E') {
          out.emplace_back(0.0, std::stod(body));
        } else {
          out.emplace_back(std::stod(body.substr(0, split)), std::stod(body.substr(split)));
        }
      } else {
        std::size_t used = 0;
        out.emplace_back(std::stod(tok, &used), 0.0);
        if (used != tok.size()) throw std::invalid_argument(tok);
      }
    } catch (const std::exception&) {
      throw UsageError("not a point: '" + tok + "'");
    }
  }
  if (out.empty()) throw UsageError("empty point list");
  return out;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    io::write_text_file(cfg.output, text);
  }
}

void emit_json(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// Target functions

struct Target {
  std::optional<StockFunction> stock;
  GridFunction grid;
  std::string name;
};

Target make_target(const std::string& selector, const RunConfig& cfg) {
  if (selector == "grid-file") {
    if (cfg.file.empty()) throw UsageError("grid-file needs --file");
    GridFunction g = [&] {
      try {
        return io::grid_from_json(io::read_json_file(cfg.file));
      } catch (const json::exception& e) {
        throw UsageError(cfg.file + ": " + e.what());
      }
    }();
    if (g.q() != cfg.q) throw UsageError("grid file q differs from --q");
    return {std::nullopt, std::move(g), "grid-file"};
  }
  StockFunction f;
  try {
    f.kind = parse_stock_kind(selector);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  f.a = cfg.a;
  f.m = cfg.m;
  if (f.kind == StockKind::step && !(f.a > 0.0 && f.a < 1.0)) throw UsageError("--a must lie in (0, 1)");
  if (f.kind == StockKind::monomial && f.m < 0) throw UsageError("--m must be non-negative");
  return {f, f.grid(cfg.q, cfg.depth), f.name()};
}

std::shared_ptr<const ZeroTable> zeros_for(const RunConfig& cfg, int K) {
  return std::make_shared<const ZeroTable>(find_zeros(cfg.context(), K));
}

FourierSeries series_for(const Target& t, const RunConfig& cfg, std::shared_ptr<const ZeroTable> zt, int K) {
  if (t.stock && cfg.method == "closed") return closed_form_series(*t.stock, zt, K);
  return compute_series(t.grid, zt, K, cfg.context());
}

// ---------------------------------------------------------------------------
// zeros

int cmd_zeros(const RunConfig& cfg) {
  const ZeroTable zt = find_zeros(cfg.context(), cfg.k);
  const bool ok = zt.verify_brackets();
  if (cfg.format == "csv") {
    std::ostringstream os;
    io::write_csv(os, zt);
    emit(cfg, os.str());
  } else {
    emit_json(cfg, io::to_json(zt));
  }
  std::cerr << (ok ? "PASS" : "FAIL") << " zeros q=" << cfg.q << " K=" << cfg.k << " brackets certified\n";
  return ok ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// expand

int cmd_expand(const RunConfig& cfg, const std::string& selector) {
  const Target t = make_target(selector, cfg);
  const auto zt = zeros_for(cfg, cfg.k);
  const QContext ctx = cfg.context();
  const FourierSeries quad = compute_series(t.grid, zt, cfg.k, ctx);
  std::optional<SeriesComparison> cmp;
  FourierSeries out = quad;
  if (t.stock) {
    const FourierSeries closed = closed_form_series(*t.stock, zt, cfg.k);
    const double floor = std::max(t.grid.sup_norm(), 1.0) * std::pow(cfg.q, cfg.depth) * 1e3;
    cmp = compare_series(quad, closed, 1e-8, floor);
    if (cfg.method == "closed") out = closed;
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    io::write_csv(os, out);
    emit(cfg, os.str());
  } else {
    json j = io::to_json(out);
    j["function"] = t.name;
    if (t.stock && t.stock->kind == StockKind::step) j["a"] = t.stock->a;
    if (t.stock && t.stock->kind == StockKind::monomial) j["m"] = t.stock->m;
    if (cmp) {
      j["closed_form_agreement"] = cmp->agree;
      j["closed_form_max_rel"] = io::number(cmp->max_rel);
    }
    emit_json(cfg, j);
  }
  if (cmp) {
    std::cerr << (cmp->agree ? "PASS" : "FAIL") << " expand " << t.name << " closed form vs quadrature max rel "
              << cmp->max_rel << "\n";
    return cmp->agree ? kExitPass : kExitFail;
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteResult {
  json report;
  bool pass = true;
};

void line(bool pass, const std::string& what) { std::cerr << (pass ? "PASS " : "FAIL ") << what << "\n"; }

SuiteResult suite_orthogonality(const RunConfig& cfg) {
  const auto zt = zeros_for(cfg, cfg.k);
  const OrthogonalityReport r = verify_orthogonality(*zt, cfg.k, cfg.context());
  SuiteResult s{io::to_json(r), r.passed(1e-8) && r.cc00_residual <= 1e-10};
  line(s.pass, "orthogonality max off-diagonal " + fmt(std::max(r.max_offdiag_cc, r.max_offdiag_ss)));
  return s;
}

SuiteResult suite_identities(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const auto zt = zeros_for(cfg, cfg.k);
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  const double omega = zt->entry(1).omega_d;
  double worst_diff = 0.0, worst_eigen = 0.0, worst_split = 0.0;
  for (int i = 0; i < 20; ++i) {
    double x = unif(rng);
    if (x == 0.0) x = 0.25;
    const IdentityCheck c = check_cosine_difference(omega, x, ctx);
    const IdentityCheck s = check_sine_difference(omega, x, ctx);
    const IdentityCheck e = check_exp_eigen(1.25, x, ctx);
    const IdentityCheck p = check_exp_split(x, ctx);
    worst_diff = std::max({worst_diff, c.residual / c.scale, s.residual / s.scale});
    worst_eigen = std::max(worst_eigen, e.residual / e.scale);
    worst_split = std::max(worst_split, p.residual / std::max(p.scale, 1.0));
  }
  double worst_recip = 0.0;
  for (int k = 1; k <= zt->size(); ++k) {
    const ReciprocalCheck r = check_reciprocal(*zt, k);
    worst_recip = std::max({worst_recip, std::fabs(r.half), std::fabs(r.minus_half)});
  }
  double worst_bessel = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double z = 0.15 * i;
    const IdentityCheck c = check_bessel_cosine(z, ctx);
    const IdentityCheck s = check_bessel_sine(z, ctx);
    worst_bessel = std::max({worst_bessel, c.residual / c.scale, s.residual / s.scale});
  }
  SuiteResult s;
  s.report = {{"difference_relations_rel", io::number(worst_diff)},
              {"exp_eigen_rel", io::number(worst_eigen)},
              {"exp_split", io::number(worst_split)},
              {"reciprocal_at_zeros", io::number(worst_recip)},
              {"bessel_connection_rel", io::number(worst_bessel)}};
  const bool ok_diff = worst_diff <= 1e-10 && worst_eigen <= 1e-10 && worst_split <= 1e-12;
  const bool ok_recip = worst_recip <= 1e-8;
  const bool ok_bessel = worst_bessel <= 1e-10;
  line(ok_diff, "difference relations / eigen-relation worst rel " + fmt(std::max(worst_diff, worst_eigen)));
  line(ok_recip, "C_q(w_k) C_q(q^{+-1/2} w_k) = 1 worst " + fmt(worst_recip));
  line(ok_bessel, "Bessel connection worst rel " + fmt(worst_bessel));
  s.pass = ok_diff && ok_recip && ok_bessel;
  s.report["pass"] = s.pass;
  return s;
}

SuiteResult suite_theorem_d(const RunConfig& cfg) {
  const auto zt = zeros_for(cfg, cfg.k);
  const QKernel& ker = zt->kernel();
  double worst = 0.0;
  for (int k = 1; k <= zt->size(); ++k) {
    const mp::BigFloat& w = zt->entry(k).omega;
    for (int n = 0; n <= 10; ++n) {
      const mp::BigFloat qn = mp::pow(zt->q_mp(), static_cast<long>(n));
      const mp::BigFloat ds = ker.sq(zt->q_mp() * qn * w);
      const mp::BigFloat dc = ker.cq(ker.sqrt_q() * qn * w);
      const double rs = (mp::abs(theorem_d_sq_mp(k, n, *zt) - ds) / mp::abs(ds)).to_double();
      const double rc = (mp::abs(theorem_d_cq_mp(k, n, *zt) - dc) / mp::abs(dc)).to_double();
      worst = std::max({worst, rs, rc});
    }
  }
  SuiteResult s;
  s.pass = worst <= 1e-8;
  s.report = {{"max_rel", io::number(worst)}, {"K", zt->size()}, {"n_max", 10}, {"pass", s.pass}};
  line(s.pass, "finite-sum recurrences vs direct series worst rel " + fmt(worst));
  return s;
}

SuiteResult suite_asymptotics(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const auto zt = zeros_for(cfg, cfg.k);
  const double B = lemma_bound_B(cfg.q, ctx.options());
  const double R = rk_bound(cfg.q, ctx.options());
  double smax = 0.0, rmax = 0.0, smin = INFINITY, rmin = INFINITY;
  json rows = json::array();
  for (int k = 1; k <= zt->size(); ++k) {
    const double sk = std::fabs(extract_Sk(*zt, k));
    const double rk = std::fabs(extract_Rk(*zt, k));
    smax = std::max(smax, sk);
    rmax = std::max(rmax, rk);
    smin = std::min(smin, sk);
    rmin = std::min(rmin, rk);
    rows.push_back({{"k", k}, {"abs_S_k", io::number(sk)}, {"abs_R_k", io::number(rk)},
                    {"eps_k", io::number(zt->entry(k).eps)}});
  }
  const bool s_ok = smax <= B && smin > 0.0;
  const bool r_ok = rmax < R && rmin > 0.0;
  // The bounds are theorems only inside their q windows; outside, report.
  const bool gated_s = ctx.theorem_e_window();
  const bool gated_r = ctx.theorem_f_window();
  SuiteResult s;
  s.pass = (!gated_s || s_ok) && (!gated_r || r_ok);
  s.report = {{"B", io::number(B)},
              {"R_bound", io::number(R)},
              {"max_abs_S_k", io::number(smax)},
              {"min_abs_S_k", io::number(smin)},
              {"max_abs_R_k", io::number(rmax)},
              {"min_abs_R_k", io::number(rmin)},
              {"S_bound_gated", gated_s},
              {"R_bound_gated", gated_r},
              {"rows", rows},
              {"pass", s.pass}};
  line(!gated_s || s_ok, std::string("|S_k| <= B") + (gated_s ? "" : " (outside window, advisory)") + ": max " +
                             fmt(smax) + " vs " + fmt(B));
  line(!gated_r || r_ok, std::string("|R_k| < bound") + (gated_r ? "" : " (outside window, advisory)") + ": max " +
                             fmt(rmax) + " vs " + fmt(R));
  return s;
}

SuiteResult suite_ibp(const RunConfig& cfg) {
  const QContext ctx(cfg.q, [&] {
    Options o = cfg.options();
    o.grid_depth = std::min(cfg.depth, 60);
    return o;
  }());
  const ScalarFunction x{[](double t) { return t; }, 0.0, 0.0};
  const ScalarFunction x2{[](double t) { return t * t; }, 0.0, 0.0};
  const ScalarFunction x3{[](double t) { return t * t * t; }, 0.0, 0.0};
  double worst = 0.0;
  for (auto variant : {IbpVariant::upper, IbpVariant::lower}) {
    for (auto [f, g] : {std::pair{&x, &x2}, std::pair{&x2, &x3}}) {
      const IdentityCheck c = verify_ibp(*f, *g, ctx, variant);
      worst = std::max(worst, c.residual / c.scale);
    }
  }
  const IdentityCheck fund = verify_fundamental(x2, ctx);
  worst = std::max(worst, fund.residual / fund.scale);
  SuiteResult s;
  s.pass = worst <= 1e-9;
  s.report = {{"max_rel_residual", io::number(worst)}, {"depth", ctx.grid_depth()}, {"pass", s.pass}};
  line(s.pass, "integration by parts worst rel residual " + fmt(worst));
  return s;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  static const std::map<std::string, std::function<SuiteResult(const RunConfig&)>> suites = {
      {"orthogonality", suite_orthogonality}, {"identities", suite_identities}, {"theorem-d", suite_theorem_d},
      {"asymptotics", suite_asymptotics},     {"ibp", suite_ibp}};
  json report = json::object();
  bool pass = true;
  if (suite == "all") {
    for (const char* name : {"orthogonality", "identities", "theorem-d", "asymptotics", "ibp"}) {
      SuiteResult r = suites.at(name)(cfg);
      report[name] = std::move(r.report);
      pass = pass && r.pass;
    }
  } else {
    auto it = suites.find(suite);
    if (it == suites.end()) throw UsageError("unknown suite '" + suite + "'");
    SuiteResult r = it->second(cfg);
    report[suite] = std::move(r.report);
    pass = r.pass;
  }
  report["q"] = cfg.q;
  report["K"] = cfg.k;
  report["pass"] = pass;
  emit_json(cfg, report);
  return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// converge

int cmd_converge_on_grid(const RunConfig& cfg, const std::string& selector) {
  const Target t = make_target(selector, cfg);
  const auto zt = zeros_for(cfg, cfg.kmax);
  const FourierSeries fs = series_for(t, cfg, zt, cfg.kmax);
  const HolderReport h = estimate_holder(t.grid);
  json rows = json::array();
  std::ostringstream csv;
  csv << "K,sup_error,err_at_1,err_at_q,err_at_q2\n";
  csv.precision(17);
  double last = INFINITY;
  for (int K = cfg.kmin; K <= cfg.kmax; ++K) {
    const GridError e = sup_error_on_grid(fs, t.grid, K, cfg.n_points);
    std::vector<double> pw;
    for (int n = 1; n <= 3; ++n) {
      const mp::BigFloat xn = mp::pow(zt->q_mp(), static_cast<long>(n - 1));
      pw.push_back(mp::abs(eval_partial_sum_mp(fs, xn, K) - t.grid.pos(n)).to_double());
    }
    csv << K << ',' << e.sup_error << ',' << pw[0] << ',' << pw[1] << ',' << pw[2] << '\n';
    rows.push_back({{"K", K}, {"sup_error", io::number(e.sup_error)}, {"pointwise", {io::number(pw[0]),
                    io::number(pw[1]), io::number(pw[2])}}});
    last = e.sup_error;
  }
  // Uniform convergence is only claimed when the one-sided limits agree.
  const bool gated = h.limits_match;
  const bool pass = !gated || last <= cfg.tol;
  if (cfg.format == "csv") {
    emit(cfg, csv.str());
  } else {
    emit_json(cfg, {{"function", t.name},
                    {"q", cfg.q},
                    {"n_points", cfg.n_points},
                    {"gated", gated},
                    {"tol", cfg.tol},
                    {"final_error", io::number(last)},
                    {"rows", rows},
                    {"pass", pass}});
  }
  line(pass, "on-grid " + t.name + " final sup error " + fmt(last) +
                 (gated ? " (tol " + fmt(cfg.tol) + ")" : " (no uniform gate: limits at 0 differ)"));
  return pass ? kExitPass : kExitFail;
}

std::function<std::complex<double>(std::complex<double>)> analytic_target(const Target& t) {
  if (!t.stock) throw UsageError("off-grid targets need a stock function");
  const StockFunction f = *t.stock;
  switch (f.kind) {
    case StockKind::monomial:
      return [m = f.m](std::complex<double> z) { return std::pow(z, m); };
    case StockKind::abs:
    case StockKind::sign:
    case StockKind::step: {
      const ScalarFunction s = f.scalar();
      return [s](std::complex<double> z) -> std::complex<double> {
        if (z.imag() != 0.0) throw UsageError("this target is defined on the real line only");
        return s(z.real());
      };
    }
  }
  throw UsageError("unsupported target");
}

int cmd_converge_off_grid(const RunConfig& cfg, const std::string& selector) {
  const Target t = make_target(selector, cfg);
  const auto target = analytic_target(t);
  const auto pts = parse_points(cfg.points);
  for (const auto& p : pts) target(p);
  const auto zt = zeros_for(cfg, cfg.kmax);
  const FourierSeries fs = series_for(t, cfg, zt, cfg.kmax);
  json rows = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "K";
  for (std::size_t i = 0; i < pts.size(); ++i) csv << ",err_" << i;
  csv << '\n';
  std::vector<double> last(pts.size(), INFINITY);
  bool overflow = false;
  for (int K = cfg.kmin; K <= cfg.kmax; ++K) {
    const auto errs = offgrid_error(fs, target, pts, K);
    json row = {{"K", K}, {"points", json::array()}};
    csv << K;
    for (std::size_t i = 0; i < errs.size(); ++i) {
      row["points"].push_back(io::to_json(errs[i]));
      csv << ',' << errs[i].error;
      last[i] = errs[i].error;
      overflow = overflow || errs[i].overflow;
    }
    csv << '\n';
    rows.push_back(std::move(row));
  }
  const double worst = *std::max_element(last.begin(), last.end());
  const bool pass = worst <= cfg.tol;
  if (cfg.format == "csv") {
    emit(cfg, csv.str());
  } else {
    emit_json(cfg, {{"function", t.name},
                    {"q", cfg.q},
                    {"tol", cfg.tol},
                    {"final_errors", [&] {
                       json a = json::array();
                       for (double e : last) a.push_back(io::number(e));
                       return a;
                     }()},
                    {"overflow", overflow},
                    {"rows", rows},
                    {"pass", pass}});
  }
  line(pass, "off-grid " + t.name + " worst final error " + fmt(worst));
  return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const RunConfig& cfg) {
  const std::vector<double> qs = parse_reals(cfg.qs);
  json rows = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "q,theorem_e_window,theorem_f_window,brackets_ok,orthogonality_offdiag,abs_sup_error\n";
  for (double q : qs) {
    RunConfig c = cfg;
    c.q = q;
    validate(c);
    const QContext ctx = c.context();
    const auto zt = zeros_for(c, c.k);
    const bool brackets = zt->verify_brackets();
    const OrthogonalityReport orth = verify_orthogonality(*zt, std::min(c.k, 8), ctx);
    const StockFunction absf = StockFunction::absolute();
    const FourierSeries fs = closed_form_series(absf, zt, c.k);
    const GridError e = sup_error_on_grid(fs, absf.grid(q, c.depth), c.k, c.n_points);
    const double off = std::max(orth.max_offdiag_cc, orth.max_offdiag_ss);
    rows.push_back({{"q", q},
                    {"theorem_e_window", ctx.theorem_e_window()},
                    {"theorem_f_window", ctx.theorem_f_window()},
                    {"brackets_ok", brackets},
                    {"orthogonality_offdiag", io::number(off)},
                    {"abs_sup_error", io::number(e.sup_error)}});
    csv << q << ',' << ctx.theorem_e_window() << ',' << ctx.theorem_f_window() << ',' << brackets << ',' << off
        << ',' << e.sup_error << '\n';
  }
  if (cfg.format == "csv") {
    emit(cfg, csv.str());
  } else {
    emit_json(cfg, {{"K", cfg.k}, {"n_points", cfg.n_points}, {"rows", rows}});
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("QFOURIER_SERIES_TOL")) {
    try {
      cfg.series_tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: QFOURIER_SERIES_TOL is not a number\n";
      return kExitUsage;
    }
  }
  // The config file is read before the flags so that flags override it.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        apply_config_file(argv[i + 1], cfg);
      } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
    }
  }

  CLI::App app{"q-Fourier expansions on the q-linear grid"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration (unknown keys rejected)");
  auto common = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "Base q in (0, 1)");
    sub->add_option("--depth", cfg.depth, "Grid depth");
    sub->add_option("--series-tol", cfg.series_tol, "Series truncation tolerance");
    sub->add_option("--root-tol", cfg.root_tol, "Relative bracket width for zeros");
    sub->add_option("--max-terms", cfg.max_terms, "Term / step cap");
    sub->add_option("--format", cfg.format, "json or csv");
    sub->add_option("-o,--output", cfg.output, "Output path (default stdout)");
  };

  auto* zeros = app.add_subcommand("zeros", "Positive zeros of S_q with certified brackets");
  common(zeros);
  zeros->add_option("--k", cfg.k, "Number of zeros");

  std::string fn;
  auto* expand = app.add_subcommand("expand", "Fourier coefficients of a function");
  common(expand);
  expand->add_option("function", fn, "abs | sign | step | monomial | grid-file")->required();
  expand->add_option("--k", cfg.k, "Number of modes");
  expand->add_option("--m", cfg.m, "Monomial exponent");
  expand->add_option("--a", cfg.a, "Step position in (0, 1)");
  expand->add_option("--file", cfg.file, "GridFunction JSON for grid-file");
  expand->add_option("--method", cfg.method, "closed or quadrature coefficients in the output");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Verification suites");
  common(verify);
  verify->add_option("suite", suite, "orthogonality | identities | theorem-d | asymptotics | ibp | all")->required();
  verify->add_option("--k", cfg.k, "Number of modes");

  std::string mode;
  auto* converge = app.add_subcommand("converge", "Error of partial sums against K");
  common(converge);
  converge->add_option("mode", mode, "on-grid | off-grid")->required();
  converge->add_option("function", fn, "abs | sign | step | monomial | grid-file")->required();
  converge->add_option("--kmin", cfg.kmin, "First K");
  converge->add_option("--kmax", cfg.kmax, "Last K");
  converge->add_option("--m", cfg.m, "Monomial exponent");
  converge->add_option("--a", cfg.a, "Step position in (0, 1)");
  converge->add_option("--file", cfg.file, "GridFunction JSON for grid-file");
  converge->add_option("--n-points", cfg.n_points, "Grid points per branch for the sup error");
  converge->add_option("--points", cfg.points, "Off-grid points, e.g. 0.3333,1.2,0.5+0.1i");
  converge->add_option("--tol", cfg.tol, "Pass threshold for the final error");
  converge->add_option("--method", cfg.method, "closed or quadrature coefficients");

  auto* sweep = app.add_subcommand("sweep", "Convergence evidence across q");
  common(sweep);
  sweep->add_option("--qs", cfg.qs, "Comma-separated q values");
  sweep->add_option("--k", cfg.k, "Number of modes");
  sweep->add_option("--n-points", cfg.n_points, "Grid points per branch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    validate(cfg);
    if (zeros->parsed()) return cmd_zeros(cfg);
    if (expand->parsed()) return cmd_expand(cfg, fn);
    if (verify->parsed()) return cmd_verify(cfg, suite);
    if (converge->parsed()) {
      if (mode == "on-grid") return cmd_converge_on_grid(cfg, fn);
      if (mode == "off-grid") return cmd_converge_off_grid(cfg, fn);
      throw UsageError("converge mode must be on-grid or off-grid");
    }
    if (sweep->parsed()) return cmd_sweep(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
