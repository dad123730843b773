#include "qfourier/functions.hpp"

#include <cmath>

#include "qfourier/bigfloat.hpp"
#include "qfourier/error.hpp"

namespace qfourier {

std::string StockFunction::name() const {
  switch (kind) {
    case StockKind::abs:
      return "abs";
    case StockKind::sign:
      return "sign";
    case StockKind::step:
      return "step";
    case StockKind::monomial:
      return "monomial";
  }
  return "?";
}

StockKind parse_stock_kind(const std::string& name) {
  if (name == "abs") return StockKind::abs;
  if (name == "sign") return StockKind::sign;
  if (name == "step") return StockKind::step;
  if (name == "monomial") return StockKind::monomial;
  throw DomainError("unknown function '" + name + "' (expected abs, sign, step or monomial)");
}

ScalarFunction StockFunction::scalar() const {
  switch (kind) {
    case StockKind::abs:
      return {[](double x) { return std::fabs(x); }, 0.0, 0.0};
    case StockKind::sign:
      // h(0) = -1; the q-integrals never see x = 0.
      return {[](double x) { return x > 0.0 ? 1.0 : -1.0; }, 1.0, -1.0};
    case StockKind::step: {
      if (!(a > 0.0 && a < 1.0)) throw DomainError("step: a must lie in (0, 1)");
      const double at = a;
      return {[at](double x) { return x > at ? 1.0 : -1.0; }, -1.0, -1.0};
    }
    case StockKind::monomial: {
      if (m < 0) throw DomainError("monomial: m must be non-negative");
      const int mm = m;
      const double at0 = mm == 0 ? 1.0 : 0.0;
      return {[mm](double x) { return std::pow(x, mm); }, at0, at0};
    }
  }
  throw DomainError("unknown stock function");
}

GridFunction StockFunction::grid(double q, int depth) const {
  const ScalarFunction f = scalar();
  if (kind == StockKind::step) {
    // Decide x > a at the exact nodes, not at rounded powers of q.
    const int na = step_index(q, a);
    std::vector<double> pos(static_cast<std::size_t>(depth));
    std::vector<double> neg(pos.size(), -1.0);
    for (int n = 1; n <= depth; ++n) pos[static_cast<std::size_t>(n - 1)] = n - 1 < na ? 1.0 : -1.0;
    return GridFunction(q, std::move(pos), std::move(neg), -1.0, -1.0);
  }
  return GridFunction::sample(f.fn, q, depth, *f.limit_0_plus, *f.limit_0_minus);
}

int step_index(double q, double a) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("step_index: q must lie in (0, 1)");
  if (!(a > 0.0 && a < 1.0)) throw DomainError("step_index: a must lie in (0, 1)");
  // q^j is exact with 53 j bits, so each comparison below is exact.
  auto below = [&](int j) {
    const mp::BigFloat qq(q, 53);
    mp::BigFloat p = mp::BigFloat::with_bits(53 * j + 64);
    mpfr_pow_ui(p.get(), qq.get(), static_cast<unsigned long>(j), MPFR_RNDN);
    return p < a;
  };
  int j = std::max(1, static_cast<int>(std::floor(std::log(a) / std::log(q))));
  while (j > 1 && below(j - 1)) --j;
  while (!below(j)) ++j;
  return j;
}

}  // namespace qfourier
