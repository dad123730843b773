#pragma once

// The stock test functions: |x|, sign, the step H^(a) and monomials x^m.

#include <string>

#include "qfourier/qcore.hpp"

namespace qfourier {

enum class StockKind { abs, sign, step, monomial };

struct StockFunction {
  StockKind kind = StockKind::abs;
  /// Step position for StockKind::step, in (0, 1).
  double a = 0.3;
  /// Exponent for StockKind::monomial.
  int m = 0;

  static StockFunction absolute() { return {StockKind::abs, 0.3, 0}; }
  static StockFunction signum() { return {StockKind::sign, 0.3, 0}; }
  static StockFunction step(double a) { return {StockKind::step, a, 0}; }
  static StockFunction monomial(int m) { return {StockKind::monomial, 0.3, m}; }

  std::string name() const;
  /// Pointwise evaluator with one-sided limits at 0.
  ScalarFunction scalar() const;
  GridFunction grid(double q, int depth) const;
};

StockKind parse_stock_kind(const std::string& name);

/// Least positive integer j with q^j < a, decided exactly (no rounding in
/// q^j). DomainError unless 0 < a < 1.
int step_index(double q, double a);

}  // namespace qfourier
