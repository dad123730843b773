#include "qfourier/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "qfourier/error.hpp"

namespace qfourier::io {

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double read_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::stod(s);
  }
  throw DomainError("expected a number, got " + j.dump());
}

namespace {

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

json big(const mp::BigFloat& x) { return x.to_string(); }

}  // namespace

json to_json(const ZeroEntry& e) {
  json j;
  j["k"] = e.k;
  j["omega"] = number(e.omega_d);
  j["omega_mp"] = big(e.omega);
  j["bracket"] = {number(e.lo), number(e.hi)};
  j["alpha"] = number(e.alpha);
  j["eps"] = number(e.eps);
  j["source"] = to_string(e.source);
  j["valid"] = e.valid;
  j["in_theorem_a"] = e.in_theorem_a;
  j["precision_warning"] = e.precision_warning;
  return j;
}

json to_json(const ZeroTable& zt) {
  json j;
  j["q"] = zt.q();
  j["bits"] = zt.bits();
  j["zeros"] = json::array();
  for (const ZeroEntry& e : zt.entries()) j["zeros"].push_back(to_json(e));
  return j;
}

ZeroTable zero_table_from_json(const json& j) {
  const double q = j.at("q").get<double>();
  const auto bits = j.at("bits").get<mp::Bits>();
  std::vector<ZeroEntry> entries;
  for (const json& z : j.at("zeros")) {
    ZeroEntry e;
    e.k = z.at("k").get<int>();
    e.omega = mp::BigFloat::parse(z.at("omega_mp").get<std::string>(), bits);
    e.lo = read_number(z.at("bracket").at(0));
    e.hi = read_number(z.at("bracket").at(1));
    const std::string src = z.at("source").get<std::string>();
    e.source = src == to_string(BracketSource::theorem_a) ? BracketSource::theorem_a : BracketSource::scan;
    e.precision_warning = z.value("precision_warning", false);
    entries.push_back(std::move(e));
  }
  return ZeroTable(q, bits, std::move(entries));
}

json to_json(const FourierSeries& fs) {
  json j;
  j["q"] = fs.q;
  j["K"] = fs.size();
  j["a0"] = number(fs.a0.to_double());
  j["a0_mp"] = big(fs.a0);
  j["a0_provenance"] = fs.a0_provenance;
  j["modes"] = json::array();
  for (int k = 1; k <= fs.size(); ++k) {
    const std::size_t i = static_cast<std::size_t>(k - 1);
    json m;
    m["k"] = k;
    m["omega"] = number(fs.zeros->entry(k).omega_d);
    m["a"] = number(fs.a[i].to_double());
    m["b"] = number(fs.b[i].to_double());
    m["mu"] = number(fs.mu[i].to_double());
    m["a_mp"] = big(fs.a[i]);
    m["b_mp"] = big(fs.b[i]);
    m["provenance"] = fs.provenance[i];
    j["modes"].push_back(std::move(m));
  }
  return j;
}

FourierSeries series_from_json(const json& j, std::shared_ptr<const ZeroTable> zt) {
  if (!zt) throw PreconditionError("series_from_json: no zero table");
  if (j.at("q").get<double>() != zt->q()) throw PreconditionError("series_from_json: q differs from the zero table");
  const mp::Bits bits = zt->bits();
  FourierSeries fs;
  fs.q = zt->q();
  fs.zeros = zt;
  fs.a0 = mp::BigFloat::parse(j.at("a0_mp").get<std::string>(), bits);
  fs.a0_provenance = j.value("a0_provenance", "");
  for (const json& m : j.at("modes")) {
    const int k = m.at("k").get<int>();
    fs.a.push_back(mp::BigFloat::parse(m.at("a_mp").get<std::string>(), bits));
    fs.b.push_back(mp::BigFloat::parse(m.at("b_mp").get<std::string>(), bits));
    fs.mu.push_back(mu_k(*zt, k));
    fs.provenance.push_back(m.value("provenance", ""));
  }
  fs.validate();
  return fs;
}

json to_json(const GridFunction& f) {
  json j;
  j["q"] = f.q();
  j["depth"] = f.depth();
  j["pos_values"] = numbers(f.pos_values());
  j["neg_values"] = numbers(f.neg_values());
  j["limit_0_plus"] = number(f.limit_0_plus());
  j["limit_0_minus"] = number(f.limit_0_minus());
  return j;
}

GridFunction grid_from_json(const json& j) {
  auto vec = [](const json& a) {
    std::vector<double> v;
    for (const json& x : a) v.push_back(read_number(x));
    return v;
  };
  GridFunction f(j.at("q").get<double>(), vec(j.at("pos_values")), vec(j.at("neg_values")),
                 read_number(j.at("limit_0_plus")), read_number(j.at("limit_0_minus")));
  // depth is optional; when present it must agree with the value arrays.
  if (j.contains("depth") && j.at("depth").get<int>() != f.depth())
    throw DomainError("grid function: depth " + std::to_string(j.at("depth").get<int>()) + " but " +
                      std::to_string(f.depth()) + " values");
  return f;
}

json to_json(const IdentityCheck& c) {
  json j;
  j["lhs"] = number(c.lhs);
  j["rhs"] = number(c.rhs);
  j["residual"] = number(c.residual);
  j["scale"] = number(c.scale);
  return j;
}

json to_json(const HolderReport& r) {
  json j;
  j["lambda_est"] = number(r.lambda_est);
  j["M_est"] = number(r.M_est);
  j["n0"] = r.n0;
  j["fit_available"] = r.fit_available;
  j["points"] = r.points;
  j["satisfied"] = r.satisfied;
  j["first_violation"] = r.first_violation ? json(*r.first_violation) : json(nullptr);
  j["zero_gap_indices"] = r.zero_gap_indices;
  j["jump_indices"] = r.jump_indices;
  j["limits_match"] = r.limits_match;
  j["lambda_above_half"] = r.lambda_above_half;
  return j;
}

json to_json(const DecayFit& f) {
  json j;
  j["available"] = f.available;
  j["c"] = number(f.c);
  j["offset"] = number(f.offset);
  j["rms_residual"] = number(f.rms_residual);
  j["points"] = f.points;
  return j;
}

json to_json(const DecayReport& r) {
  json j;
  j["k"] = r.k;
  j["log2_cosine_integral"] = numbers(r.log2_cosine);
  j["log2_sine_integral"] = numbers(r.log2_sine);
  j["noise_floor_log2"] = number(r.noise_floor_log2);
  j["linear"] = {{"cosine", to_json(r.lin_cosine)}, {"sine", to_json(r.lin_sine)}, {"combined", to_json(r.c_lin)}};
  j["quadratic"] = {
      {"cosine", to_json(r.quad_cosine)}, {"sine", to_json(r.quad_sine)}, {"combined", to_json(r.c_quad)}};
  j["c_lin_gt_1"] = r.c_lin_gt_1;
  j["c_quad_gt_0"] = r.c_quad_gt_0;
  return j;
}

json to_json(const GridError& e) {
  return json{{"sup_error", number(e.sup_error)}, {"at", number(e.at)}, {"nodes", e.nodes}};
}

json to_json(const PointError& e) {
  json j;
  j["point"] = {number(e.point.real()), number(e.point.imag())};
  j["value"] = {number(e.value.real()), number(e.value.imag())};
  j["target"] = {number(e.target.real()), number(e.target.imag())};
  j["error"] = number(e.error);
  j["overflow"] = e.overflow;
  if (!e.message.empty()) j["message"] = e.message;
  return j;
}

json to_json(const OrthogonalityReport& r) {
  json j;
  j["kmax"] = r.kmax;
  j["max_offdiag_cc"] = number(r.max_offdiag_cc);
  j["max_offdiag_ss"] = number(r.max_offdiag_ss);
  j["max_cs"] = number(r.max_cs);
  j["max_diag_rel_cc"] = number(r.max_diag_rel_cc);
  j["max_diag_rel_ss"] = number(r.max_diag_rel_ss);
  j["cc00_residual"] = number(r.cc00_residual);
  j["max_mu"] = number(r.max_mu);
  j["passed"] = r.passed();
  return j;
}

json to_json(const EnergyCheck& e) {
  return json{{"energy", number(e.energy)}, {"bound", number(e.bound)}, {"holds", e.holds}};
}

void write_csv(std::ostream& os, const ZeroTable& zt) {
  os << "k,omega,lo,hi,alpha,eps,source,valid,in_theorem_a\n";
  os << std::setprecision(17);
  for (const ZeroEntry& e : zt.entries()) {
    os << e.k << ',' << e.omega_d << ',' << e.lo << ',' << e.hi << ',' << e.alpha << ',' << e.eps << ','
       << to_string(e.source) << ',' << e.valid << ',' << e.in_theorem_a << '\n';
  }
}

void write_csv(std::ostream& os, const FourierSeries& fs) {
  os << "k,omega,a,b,mu,provenance\n";
  os << std::setprecision(17);
  os << 0 << ',' << 0 << ',' << fs.a0.to_double() << ',' << 0 << ',' << 0 << ',' << fs.a0_provenance << '\n';
  for (int k = 1; k <= fs.size(); ++k) {
    os << k << ',' << fs.zeros->entry(k).omega_d << ',' << fs.a_d(k) << ',' << fs.b_d(k) << ',' << fs.mu_d(k) << ','
       << fs.provenance[static_cast<std::size_t>(k - 1)] << '\n';
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

}  // namespace qfourier::io
