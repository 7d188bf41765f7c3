#include "ostrovsky/algebra/rational_function.hpp"

#include <algorithm>

#include "ostrovsky/errors.hpp"

namespace ostrovsky::algebra {
namespace {

bool needs_parens(const Polynomial& p) { return p.size() > 1; }

}  // namespace

RationalFunction::RationalFunction(const BigRational& constant)
    : num_(constant), den_(BigRational(1)) {
  canonicalize();
}

RationalFunction::RationalFunction(Polynomial p) : num_(std::move(p)), den_(BigRational(1)) {
  canonicalize();
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MalformedInput("rational function with zero denominator");
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(BigRational(1));
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  // Denominator: primitive with positive leading coefficient.
  BigRational scale = 1 / unit_content(den_);
  // Numerator: clear coefficient denominators, then cancel the common integer content.
  BigInteger num_lcm(1);
  for (const auto& [m, c] : num_.terms()) {
    BigRational scaled = c * scale;
    mpz_lcm(num_lcm.get_mpz_t(), num_lcm.get_mpz_t(), scaled.get_den_mpz_t());
  }
  BigInteger common(0);
  for (const auto& [m, c] : num_.terms()) {
    BigRational scaled = c * scale * num_lcm;
    mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), scaled.get_num_mpz_t());
  }
  mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), num_lcm.get_mpz_t());
  BigRational total = scale * BigRational(num_lcm) / BigRational(common);
  num_ = num_.scaled(total);
  den_ = den_.scaled(total);
}

std::vector<Variable> RationalFunction::variables() const {
  auto vars = num_.variables();
  auto more = den_.variables();
  vars.insert(vars.end(), more.begin(), more.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    num_ += other.num_;
  } else if (den_.is_constant() && other.den_.is_constant()) {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ = den_ * other.den_;
  } else {
    Polynomial g = gcd(den_, other.den_);
    if (g.is_constant()) {
      num_ = num_ * other.den_ + other.num_ * den_;
      den_ = den_ * other.den_;
    } else {
      Polynomial left = *divide_exact(den_, g);
      Polynomial right = *divide_exact(other.den_, g);
      num_ = num_ * right + other.num_ * left;
      den_ = left * other.den_;
    }
  }
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other) {
  return *this += -other;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& other) {
  if (is_zero() || other.is_zero()) return *this = RationalFunction();
  // Cross-cancel before multiplying to keep the final gcd small.
  Polynomial g1 = gcd(num_, other.den_);
  Polynomial g2 = gcd(other.num_, den_);
  Polynomial a = g1.is_constant() ? num_ : *divide_exact(num_, g1);
  Polynomial d = g1.is_constant() ? other.den_ : *divide_exact(other.den_, g1);
  Polynomial c = g2.is_constant() ? other.num_ : *divide_exact(other.num_, g2);
  Polynomial b = g2.is_constant() ? den_ : *divide_exact(den_, g2);
  num_ = a * c;
  den_ = b * d;
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& other) {
  if (other.is_zero()) throw MalformedInput("division by the zero rational function");
  return *this *= RationalFunction(other.den_, other.num_, Canonical{});
}

RationalFunction RationalFunction::operator-() const {
  return RationalFunction(-num_, den_, Canonical{});
}

RationalFunction RationalFunction::pow(int exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw MalformedInput("negative power of zero");
    return RationalFunction(den_.pow(static_cast<unsigned>(-exponent)),
                            num_.pow(static_cast<unsigned>(-exponent)));
  }
  return RationalFunction(num_.pow(static_cast<unsigned>(exponent)),
                          den_.pow(static_cast<unsigned>(exponent)));
}

RationalFunction RationalFunction::substitute(const std::map<Variable, Polynomial>& values) const {
  Polynomial den = den_.substitute(values);
  if (den.is_zero()) throw MalformedInput("substitution makes the denominator vanish: " + to_string());
  return RationalFunction(num_.substitute(values), std::move(den));
}

RationalFunction RationalFunction::renamed(const std::map<Variable, Variable>& renaming) const {
  return RationalFunction(num_.renamed(renaming), den_.renamed(renaming));
}

BigRational RationalFunction::evaluate(const std::map<Variable, BigRational>& point) const {
  BigRational den = den_.evaluate(point);
  if (den == 0) throw MalformedInput("denominator vanishes at the evaluation point");
  return num_.evaluate(point) / den;
}

std::string RationalFunction::to_string() const {
  std::string num = num_.to_string();
  if (den_ == Polynomial(BigRational(1))) return num;
  if (needs_parens(num_)) num = "(" + num + ")";
  std::string den = den_.to_string();
  if (needs_parens(den_) || (!den_.leading_monomial().is_one() && den_.leading_coefficient() != 1)) {
    den = "(" + den + ")";
  }
  return num + "/" + den;
}

RationalFunction normalize(const RationalFunction& f) {
  return RationalFunction(f.numerator(), f.denominator());
}

bool is_polynomial_in_xi(const RationalFunction& f) {
  auto vars = f.denominator().variables();
  return std::none_of(vars.begin(), vars.end(), [](Variable v) { return v.is_xi(); });
}

bool equal_by_cross_multiplication(const RationalFunction& a, const RationalFunction& b) {
  return a.numerator() * b.denominator() == b.numerator() * a.denominator();
}

}  // namespace ostrovsky::algebra
