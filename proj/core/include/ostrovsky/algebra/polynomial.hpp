#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ostrovsky/algebra/rational.hpp"
#include "ostrovsky/algebra/variable.hpp"

namespace ostrovsky::algebra {

/// Power product of variables, stored as (variable, exponent) pairs sorted by
/// variable significance. Exponents are always positive.
class Monomial {
 public:
  using Factor = std::pair<Variable, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(Variable v, std::uint32_t exponent = 1);

  /// Sorts, merges repeated variables and drops zero exponents.
  static Monomial from_factors(std::vector<Factor> factors);

  std::span<const Factor> factors() const noexcept { return factors_; }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t degree_in(Variable v) const noexcept;
  bool is_one() const noexcept { return factors_.empty(); }
  bool contains(Variable v) const noexcept { return degree_in(v) != 0; }

  Monomial operator*(const Monomial& other) const;
  /// Quotient when `divisor` divides this monomial.
  std::optional<Monomial> divide(const Monomial& divisor) const;
  Monomial without(Variable v) const;
  Monomial renamed(const std::map<Variable, Variable>& renaming) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic comparison: positive when a is more significant.
int compare_grlex(const Monomial& a, const Monomial& b) noexcept;

struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return compare_grlex(a, b) > 0;
  }
};

/// Sparse multivariate polynomial with exact rational coefficients. Terms are
/// kept in descending graded-lex order; zero coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Monomial, BigRational, GrlexDescending>;

  Polynomial() = default;
  Polynomial(const BigRational& constant);  // NOLINT(google-explicit-constructor)
  Polynomial(long constant) : Polynomial(BigRational(constant)) {}  // NOLINT
  explicit Polynomial(Variable v);

  static Polynomial term(const BigRational& coefficient, Monomial monomial);

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Constant term value; throws ContractViolation when not constant.
  BigRational constant_value() const;

  const Monomial& leading_monomial() const;
  const BigRational& leading_coefficient() const;

  std::uint32_t total_degree() const noexcept;
  std::uint32_t degree_in(Variable v) const noexcept;
  bool contains(Variable v) const noexcept;
  /// Variables that occur, most significant first.
  std::vector<Variable> variables() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  Polynomial scaled(const BigRational& factor) const;
  Polynomial times(const Monomial& m) const;
  Polynomial pow(unsigned exponent) const;

  /// Coefficients with respect to `v`, keyed by exponent; keys with zero coefficient are absent.
  std::map<std::uint32_t, Polynomial> coefficients_in(Variable v) const;
  static Polynomial from_coefficients(Variable v, const std::map<std::uint32_t, Polynomial>& coefficients);

  /// Simultaneous substitution of polynomials for variables.
  Polynomial substitute(const std::map<Variable, Polynomial>& values) const;
  Polynomial renamed(const std::map<Variable, Variable>& renaming) const;

  /// Every variable occurring must have a value; throws ContractViolation otherwise.
  BigRational evaluate(const std::map<Variable, BigRational>& point) const;

  /// Stable text form: grlex-descending terms, explicit `^` powers and `*`.
  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(const Monomial& m, const BigRational& c);

  Terms terms_;
};

/// Quotient a / b when b divides a exactly, otherwise nullopt. b must be nonzero.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Rational scale c with p / c having coprime integer coefficients and a
/// positive leading coefficient. p must be nonzero.
BigRational unit_content(const Polynomial& p);

/// p / unit_content(p); zero stays zero.
Polynomial primitive(const Polynomial& p);

/// Greatest common divisor over Q, returned primitive with positive leading
/// coefficient. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// gcd of the coefficients of p with respect to v (a polynomial free of v).
Polynomial content_in(const Polynomial& p, Variable v);

}  // namespace ostrovsky::algebra
