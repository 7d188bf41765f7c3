#pragma once

#include <map>

#include "ostrovsky/algebra/rational_function.hpp"

namespace ostrovsky::algebra {

/// Truncated expansion sum_{n = start_order}^{depth} c_n * var^{-n} of a
/// rational function as var -> infinity. Only nonzero coefficients are
/// stored; no coefficient contains `var`.
class LaurentSeries {
 public:
  LaurentSeries(Variable var, int start_order, int depth, std::map<int, RationalFunction> nonzero);

  Variable variable() const noexcept { return var_; }
  int start_order() const noexcept { return start_order_; }
  int depth() const noexcept { return depth_; }

  /// Coefficient of var^{-n}; zero below start_order. Throws ContractViolation for n > depth.
  RationalFunction coefficient(int n) const;
  const std::map<int, RationalFunction>& nonzero_coefficients() const noexcept { return coeffs_; }

  /// Prefix up to `depth`; throws EmptySeries when depth < start_order.
  LaurentSeries truncated(int depth) const;

  /// The finite sum as a rational function of var.
  RationalFunction partial_sum() const;

  friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

 private:
  Variable var_;
  int start_order_;
  int depth_;
  std::map<int, RationalFunction> coeffs_;
};

/// Exact series division at var -> infinity, through order var^{-depth}.
/// Throws EmptySeries when depth < start order of f.
LaurentSeries laurent_expand(const RationalFunction& f, int depth, Variable var = Variable::eta());

/// Self-check: (partial sum) * den(f) - num(f) = O(var^{deg den - depth - 1}).
bool resummation_matches(const RationalFunction& f, const LaurentSeries& series);

}  // namespace ostrovsky::algebra
