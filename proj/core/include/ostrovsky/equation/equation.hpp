#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ostrovsky/algebra/rational_function.hpp"

namespace ostrovsky::equation {

using algebra::RationalFunction;

/// coefficient * D^{-inverse_d_count}( prod_i D^{factors[i]} u ).
///
/// `factors` is a sorted multiset of derivative orders; its size is the
/// degree in u. The coefficient involves parameters only.
struct DiffMonomial {
  RationalFunction coefficient;
  std::vector<int> factors;
  int inverse_d_count = 0;

  int degree() const noexcept { return static_cast<int>(factors.size()); }

  friend bool operator==(const DiffMonomial&, const DiffMonomial&) = default;
};

/// Parses `u_t = <expr>` into a canonical, merged list of monomials ordered
/// by degree, then inverse-derivative count, then derivative orders.
///
/// Grammar (whitespace-insensitive):
///   equation := "u_t" "=" expr
///   expr     := ["+"|"-"] term (("+"|"-") term)*
///   term     := unary (("*"|"/") unary)*      divisors must not contain u
///   unary    := "-" unary | factor
///   factor   := integer | param | "u" | "D" int "(" expr ")" | "Dinv" "(" expr ")" | "(" expr ")"
///   param    := "beta" | "gamma" | identifier
///
/// Throws ParseError with line and column on bad input.
std::vector<DiffMonomial> parse(std::string_view text);

/// Inverse of parse: parse(render(m)) == m.
std::string render(std::span<const DiffMonomial> monomials);

/// Homogeneous parts F_k keyed by degree k >= 1.
struct GradedEquation {
  std::map<int, std::vector<DiffMonomial>> parts;

  int max_degree() const { return parts.empty() ? 0 : parts.rbegin()->first; }
  std::span<const DiffMonomial> part(int degree) const;
};

/// Throws UnsupportedEquation when the linear part is empty, a constant
/// term is present, or a degree exceeds `max_degree`.
GradedEquation grade(std::span<const DiffMonomial> monomials, int max_degree = 3);

/// Symbolic form u_t = u*omega(xi1) + (u^2/2)*a_1(xi1, xi2) + (u^3/3)*a_2(...) + ...
struct EvolutionEquation {
  RationalFunction omega;
  /// a[k-1] holds a_k, a symmetric function of xi1..xi_{k+1}.
  std::vector<RationalFunction> a;
  int max_degree = 1;

  /// a_k, or zero beyond the equation's degree.
  RationalFunction a_k(int k) const;

  /// Applies the substitution to omega and every a_k (e.g. gamma -> 0).
  EvolutionEquation substitute(const std::map<algebra::Variable, algebra::Polynomial>& values) const;

  friend bool operator==(const EvolutionEquation&, const EvolutionEquation&) = default;
};

/// Unsymmetrized symbol of one monomial: coefficient * prod xi_i^{q_i} / (xi_1 + ... + xi_m)^count.
RationalFunction symbol(const DiffMonomial& monomial);

EvolutionEquation to_symbols(const GradedEquation& graded);

/// Equation text for the built-in aliases "ostrovsky" and "kdv".
std::optional<std::string> builtin_equation(std::string_view alias);

}  // namespace ostrovsky::equation
