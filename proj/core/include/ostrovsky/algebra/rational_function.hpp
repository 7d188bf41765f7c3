#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ostrovsky/algebra/polynomial.hpp"

namespace ostrovsky::algebra {

/// Exact quotient of two polynomials, always held in canonical form:
/// numerator and denominator share no nonconstant factor, both have coprime
/// integer coefficients, and the denominator's graded-lex leading coefficient
/// is positive. Canonical form makes equality structural.
class RationalFunction {
 public:
  RationalFunction() : den_(BigRational(1)) {}
  RationalFunction(const BigRational& constant);  // NOLINT(google-explicit-constructor)
  RationalFunction(long constant) : RationalFunction(BigRational(constant)) {}  // NOLINT
  RationalFunction(Polynomial p);                 // NOLINT(google-explicit-constructor)
  /// Throws MalformedInput when `den` is zero.
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction variable(Variable v) { return RationalFunction(Polynomial(v)); }

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  bool contains(Variable v) const noexcept { return num_.contains(v) || den_.contains(v); }
  std::vector<Variable> variables() const;

  RationalFunction& operator+=(const RationalFunction& other);
  RationalFunction& operator-=(const RationalFunction& other);
  RationalFunction& operator*=(const RationalFunction& other);
  RationalFunction& operator/=(const RationalFunction& other);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const;

  /// Integer power; negative exponents invert (throws MalformedInput on zero).
  RationalFunction pow(int exponent) const;

  /// Simultaneous substitution. Throws MalformedInput if the denominator
  /// vanishes identically afterwards.
  RationalFunction substitute(const std::map<Variable, Polynomial>& values) const;
  RationalFunction renamed(const std::map<Variable, Variable>& renaming) const;

  /// Throws MalformedInput when the denominator vanishes at `point`.
  BigRational evaluate(const std::map<Variable, BigRational>& point) const;

  /// "num" when the denominator is 1, otherwise "num/den" with multi-term
  /// parts parenthesized.
  std::string to_string() const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  struct Canonical {};
  RationalFunction(Polynomial num, Polynomial den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  Polynomial num_;
  Polynomial den_;
};

/// Re-derives the canonical form; idempotent.
RationalFunction normalize(const RationalFunction& f);

/// True when the canonical denominator involves no xi variable. Parameters
/// and eta in the denominator are allowed.
bool is_polynomial_in_xi(const RationalFunction& f);

/// Cross-multiplication test, independent of canonical form.
bool equal_by_cross_multiplication(const RationalFunction& a, const RationalFunction& b);

}  // namespace ostrovsky::algebra
