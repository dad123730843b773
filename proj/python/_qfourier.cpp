#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfourier/analysis.hpp"
#include "qfourier/error.hpp"
#include "qfourier/fourier.hpp"
#include "qfourier/functions.hpp"
#include "qfourier/identities.hpp"
#include "qfourier/io.hpp"
#include "qfourier/qtrig.hpp"
#include "qfourier/theorem_d.hpp"
#include "qfourier/zeros.hpp"

namespace py = pybind11;
using namespace qfourier;

namespace {

// Reports cross the boundary as JSON text; the Python package decodes them.
template <class T>
std::string dump(const T& x) {
  return io::to_json(x).dump();
}

template <class T>
py::dict series_value(const SeriesValue<T>& v) {
  py::dict d;
  d["value"] = v.value;
  d["terms_used"] = v.terms_used;
  d["log2_peak"] = v.log2_peak;
  d["cancellation_ratio"] = v.cancellation_ratio;
  d["bits"] = v.bits;
  d["backend"] = to_string(v.backend);
  return d;
}

Backend parse_backend(const std::string& name) {
  if (name == "automatic") return Backend::automatic;
  if (name == "compensated") return Backend::compensated;
  if (name == "double_double") return Backend::double_double;
  if (name == "multiprecision") return Backend::multiprecision;
  throw DomainError("unknown backend '" + name + "'");
}

StockFunction stock(const std::string& kind, double a, int m) {
  StockFunction f;
  f.kind = parse_stock_kind(kind);
  f.a = a;
  f.m = m;
  return f;
}

}  // namespace

PYBIND11_MODULE(_qfourier, m) {
  m.doc() = "q-Fourier expansions on the q-linear grid";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base.ptr());
  py::register_exception<OverflowError>(m, "OverflowError", base.ptr());

  py::class_<QContext>(m, "QContext")
      .def(py::init([](double q, double series_tol, std::size_t max_terms, int grid_depth, double root_tol) {
             Options o;
             o.series_tol = series_tol;
             o.max_terms = max_terms;
             o.grid_depth = grid_depth;
             o.root_tol = root_tol;
             return QContext(q, o);
           }),
           py::arg("q"), py::arg("series_tol") = 0x1p-53, py::arg("max_terms") = 100000, py::arg("grid_depth") = 200,
           py::arg("root_tol") = 1e-14)
      .def_property_readonly("q", &QContext::q)
      .def_property_readonly("series_tol", &QContext::series_tol)
      .def_property_readonly("grid_depth", &QContext::grid_depth)
      .def_property_readonly("theorem_e_window", &QContext::theorem_e_window)
      .def_property_readonly("theorem_f_window", &QContext::theorem_f_window);

  py::class_<GridFunction>(m, "GridFunction")
      .def(py::init<double, std::vector<double>, std::vector<double>, double, double>(), py::arg("q"),
           py::arg("pos_values"), py::arg("neg_values"), py::arg("limit_0_plus"), py::arg("limit_0_minus"))
      .def_property_readonly("q", &GridFunction::q)
      .def_property_readonly("depth", &GridFunction::depth)
      .def_property_readonly("pos_values", &GridFunction::pos_values)
      .def_property_readonly("neg_values", &GridFunction::neg_values)
      .def_property_readonly("limit_0_plus", &GridFunction::limit_0_plus)
      .def_property_readonly("limit_0_minus", &GridFunction::limit_0_minus)
      .def("at", &GridFunction::at)
      .def("to_json", [](const GridFunction& g) { return dump(g); });

  m.def(
      "stock_grid",
      [](const std::string& kind, double q, int depth, double a, int mm) { return stock(kind, a, mm).grid(q, depth); },
      py::arg("kind"), py::arg("q"), py::arg("depth") = 200, py::arg("a") = 0.3, py::arg("m") = 0);
  m.def("step_index", &step_index, py::arg("q"), py::arg("a"));

  // q-calculus
  m.def("q_pochhammer", py::overload_cast<double, double, std::size_t>(&q_pochhammer), py::arg("a"), py::arg("q"),
        py::arg("n"));
  m.def(
      "q_pochhammer_inf", [](double a, double q) { return q_pochhammer_inf(a, q); }, py::arg("a"), py::arg("q"));
  m.def(
      "delta_quotient",
      [](const std::function<double(double)>& f, double x, double q) { return delta_quotient(f, x, q); },
      py::arg("f"), py::arg("x"), py::arg("q"));
  m.def(
      "q_integral_sym",
      [](const std::function<double(double)>& f, const QContext& ctx) { return q_integral_sym(f, ctx).value; },
      py::arg("f"), py::arg("ctx"));

  // Series
  m.def(
      "exp_q", [](std::complex<double> w, const QContext& ctx, const std::string& b) {
        return series_value(exp_q(w, ctx, parse_backend(b)));
      },
      py::arg("w"), py::arg("ctx"), py::arg("backend") = "automatic");
  m.def(
      "cq", [](double z, const QContext& ctx, const std::string& b) { return series_value(cq(z, ctx, parse_backend(b))); },
      py::arg("z"), py::arg("ctx"), py::arg("backend") = "automatic");
  m.def(
      "sq", [](double z, const QContext& ctx, const std::string& b) { return series_value(sq(z, ctx, parse_backend(b))); },
      py::arg("z"), py::arg("ctx"), py::arg("backend") = "automatic");
  m.def(
      "sq_prime",
      [](double z, const QContext& ctx, const std::string& b) {
        return series_value(sq_prime(z, ctx, parse_backend(b)));
      },
      py::arg("z"), py::arg("ctx"), py::arg("backend") = "automatic");
  m.def(
      "cq_complex", [](std::complex<double> z, const QContext& ctx) { return series_value(cq(z, ctx)); },
      py::arg("z"), py::arg("ctx"));
  m.def(
      "sq_complex", [](std::complex<double> z, const QContext& ctx) { return series_value(sq(z, ctx)); },
      py::arg("z"), py::arg("ctx"));
  m.def(
      "jackson_bessel3",
      [](double nu, double z, double q, const QContext& ctx) { return series_value(jackson_bessel3(nu, z, q, ctx)); },
      py::arg("nu"), py::arg("z"), py::arg("q"), py::arg("ctx"));

  // Zeros
  m.def("beta0", &beta0);
  m.def("alpha_k", &alpha_k, py::arg("q"), py::arg("k"));
  m.def(
      "theorem_a_bracket",
      [](double q, int k) {
        const Bracket b = theorem_a_bracket(q, k);
        return py::make_tuple(b.lo, b.hi, b.valid);
      },
      py::arg("q"), py::arg("k"));

  py::class_<ZeroTable, std::shared_ptr<ZeroTable>>(m, "ZeroTable")
      .def_property_readonly("q", &ZeroTable::q)
      .def_property_readonly("bits", &ZeroTable::bits)
      .def("__len__", &ZeroTable::size)
      .def("omega", [](const ZeroTable& zt, int k) { return zt.entry(k).omega_d; })
      .def("omega_str", [](const ZeroTable& zt, int k) { return zt.entry(k).omega.to_string(); })
      .def("bracket", [](const ZeroTable& zt, int k) { return py::make_tuple(zt.entry(k).lo, zt.entry(k).hi); })
      .def("mu", [](const ZeroTable& zt, int k) { return mu_k(zt, k).to_double(); })
      .def("S_k", [](const ZeroTable& zt, int k) { return extract_Sk(zt, k); })
      .def("R_k", [](const ZeroTable& zt, int k) { return extract_Rk(zt, k); })
      .def("verify_brackets", &ZeroTable::verify_brackets)
      .def("to_json", [](const ZeroTable& zt) { return dump(zt); });

  m.def(
      "find_zeros", [](const QContext& ctx, int K) { return std::make_shared<ZeroTable>(find_zeros(ctx, K)); },
      py::arg("ctx"), py::arg("K"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "theorem_d_sq", [](int k, int n, const ZeroTable& zt, const QContext& ctx) { return theorem_d_sq(k, n, zt, ctx); },
      py::arg("k"), py::arg("n"), py::arg("zt"), py::arg("ctx"));
  m.def(
      "theorem_d_cq", [](int k, int n, const ZeroTable& zt, const QContext& ctx) { return theorem_d_cq(k, n, zt, ctx); },
      py::arg("k"), py::arg("n"), py::arg("zt"), py::arg("ctx"));

  // Expansions
  py::class_<FourierSeries>(m, "FourierSeries")
      .def_property_readonly("q", [](const FourierSeries& fs) { return fs.q; })
      .def_property_readonly("K", &FourierSeries::size)
      .def_property_readonly("a0", [](const FourierSeries& fs) { return fs.a0.to_double(); })
      .def_property_readonly("a",
                             [](const FourierSeries& fs) {
                               std::vector<double> v;
                               for (int k = 1; k <= fs.size(); ++k) v.push_back(fs.a_d(k));
                               return v;
                             })
      .def_property_readonly("b",
                             [](const FourierSeries& fs) {
                               std::vector<double> v;
                               for (int k = 1; k <= fs.size(); ++k) v.push_back(fs.b_d(k));
                               return v;
                             })
      .def_property_readonly("mu",
                             [](const FourierSeries& fs) {
                               std::vector<double> v;
                               for (int k = 1; k <= fs.size(); ++k) v.push_back(fs.mu_d(k));
                               return v;
                             })
      .def_readonly("provenance", &FourierSeries::provenance)
      .def(
          "__call__", [](const FourierSeries& fs, double x, int K) { return eval_partial_sum(fs, x, K); },
          py::arg("x"), py::arg("K_used") = -1)
      .def(
          "eval_complex",
          [](const FourierSeries& fs, std::complex<double> x, int K) { return eval_partial_sum(fs, x, K); },
          py::arg("x"), py::arg("K_used") = -1)
      .def("to_json", [](const FourierSeries& fs) { return dump(fs); });

  m.def(
      "compute_series",
      [](const GridFunction& f, std::shared_ptr<ZeroTable> zt, int K, const QContext& ctx) {
        return compute_series(f, std::shared_ptr<const ZeroTable>(zt), K, ctx);
      },
      py::arg("f"), py::arg("zt"), py::arg("K"), py::arg("ctx"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "closed_form_series",
      [](const std::string& kind, std::shared_ptr<ZeroTable> zt, int K, double a, int mm) {
        return closed_form_series(stock(kind, a, mm), std::shared_ptr<const ZeroTable>(zt), K);
      },
      py::arg("kind"), py::arg("zt"), py::arg("K"), py::arg("a") = 0.3, py::arg("m") = 0);

  // Analysis (reports as JSON text)
  m.def(
      "_check_holder",
      [](const GridFunction& f, double M, double lambda, int n0) { return dump(check_holder(f, M, lambda, n0)); },
      py::arg("f"), py::arg("M"), py::arg("lam"), py::arg("n0") = 1);
  m.def(
      "_estimate_holder", [](const GridFunction& f) { return dump(estimate_holder(f)); }, py::arg("f"));
  m.def(
      "_decay_diagnostics",
      [](const GridFunction& f, const ZeroTable& zt, int K, const QContext& ctx) {
        return dump(decay_diagnostics(f, zt, K, ctx));
      },
      py::arg("f"), py::arg("zt"), py::arg("K"), py::arg("ctx"));
  m.def(
      "_verify_orthogonality",
      [](const ZeroTable& zt, int kmax, const QContext& ctx) { return dump(verify_orthogonality(zt, kmax, ctx)); },
      py::arg("zt"), py::arg("kmax"), py::arg("ctx"));
  m.def(
      "sup_error_on_grid",
      [](const FourierSeries& fs, const GridFunction& f, int K, int N) { return sup_error_on_grid(fs, f, K, N).sup_error; },
      py::arg("fs"), py::arg("f"), py::arg("K_used"), py::arg("N"));
  m.def(
      "lemma_bound_B", [](double q) { return lemma_bound_B(q); }, py::arg("q"));
  m.def(
      "rk_bound", [](double q) { return rk_bound(q); }, py::arg("q"));
}
