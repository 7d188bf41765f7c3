#include "ostrovsky/algebra/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "ostrovsky/errors.hpp"

namespace ostrovsky::algebra {
namespace {

BigRational rational_pow(const BigRational& base, std::uint32_t exponent) {
  BigInteger num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  BigRational result(num, den);
  result.canonicalize();
  return result;
}

}  // namespace

// ---- Monomial --------------------------------------------------------------

Monomial::Monomial(Variable v, std::uint32_t exponent) {
  if (exponent != 0) {
    factors_.emplace_back(v, exponent);
    degree_ = exponent;
  }
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(v, e);
    }
    m.degree_ += e;
  }
  return m;
}

std::uint32_t Monomial::degree_in(Variable v) const noexcept {
  for (const auto& [var, e] : factors_) {
    if (var == v) return e;
    if (v < var) break;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial result;
  result.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      result.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      result.factors_.push_back(*b++);
    } else {
      result.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  result.degree_ = degree_ + other.degree_;
  return result;
}

std::optional<Monomial> Monomial::divide(const Monomial& divisor) const {
  Monomial result;
  auto a = factors_.begin();
  for (const auto& [v, e] : divisor.factors_) {
    while (a != factors_.end() && a->first < v) result.factors_.push_back(*a++);
    if (a == factors_.end() || a->first != v || a->second < e) return std::nullopt;
    if (a->second > e) result.factors_.emplace_back(v, a->second - e);
    ++a;
  }
  while (a != factors_.end()) result.factors_.push_back(*a++);
  result.degree_ = degree_ - divisor.degree_;
  return result;
}

Monomial Monomial::without(Variable v) const {
  Monomial result;
  for (const auto& f : factors_) {
    if (f.first == v) continue;
    result.factors_.push_back(f);
    result.degree_ += f.second;
  }
  return result;
}

Monomial Monomial::renamed(const std::map<Variable, Variable>& renaming) const {
  std::vector<Factor> factors(factors_);
  for (auto& f : factors) {
    if (auto it = renaming.find(f.first); it != renaming.end()) f.first = it->second;
  }
  return from_factors(std::move(factors));
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial result;
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() && ib != b.factors_.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      auto e = std::min(ia->second, ib->second);
      result.factors_.emplace_back(ia->first, e);
      result.degree_ += e;
      ++ia;
      ++ib;
    }
  }
  return result;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [v, e] : factors_) {
    if (!out.empty()) out += '*';
    out += v.name();
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

int compare_grlex(const Monomial& a, const Monomial& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first ? 1 : -1;
    if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second ? 1 : -1;
  }
  if (i < fa.size()) return 1;
  if (i < fb.size()) return -1;
  return 0;
}

// ---- Polynomial ------------------------------------------------------------

Polynomial::Polynomial(const BigRational& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

Polynomial::Polynomial(Variable v) { terms_.emplace(Monomial(v), BigRational(1)); }

Polynomial Polynomial::term(const BigRational& coefficient, Monomial monomial) {
  Polynomial p;
  if (coefficient != 0) p.terms_.emplace(std::move(monomial), coefficient);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

BigRational Polynomial::constant_value() const {
  if (!is_constant()) throw ContractViolation("polynomial is not constant: " + to_string());
  return terms_.empty() ? BigRational(0) : terms_.begin()->second;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw ContractViolation("zero polynomial has no leading term");
  return terms_.begin()->first;
}

const BigRational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw ContractViolation("zero polynomial has no leading term");
  return terms_.begin()->second;
}

std::uint32_t Polynomial::total_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::uint32_t Polynomial::degree_in(Variable v) const noexcept {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
  return d;
}

bool Polynomial::contains(Variable v) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(),
                     [v](const auto& t) { return t.first.contains(v); });
}

std::vector<Variable> Polynomial::variables() const {
  std::vector<Variable> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.factors()) vars.push_back(v);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

void Polynomial::add_term(const Monomial& m, const BigRational& c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial result;
  if (a.is_zero() || b.is_zero()) return result;
  BigRational product;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      product = ca * cb;
      result.add_term(ma * mb, product);
    }
  }
  return result;
}

Polynomial Polynomial::operator-() const {
  Polynomial result(*this);
  for (auto& [m, c] : result.terms_) c = -c;
  return result;
}

Polynomial Polynomial::scaled(const BigRational& factor) const {
  if (factor == 0) return {};
  Polynomial result(*this);
  for (auto& [m, c] : result.terms_) c *= factor;
  return result;
}

Polynomial Polynomial::times(const Monomial& m) const {
  Polynomial result;
  for (const auto& [tm, c] : terms_) result.terms_.emplace_hint(result.terms_.end(), tm * m, c);
  return result;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(BigRational(1));
  Polynomial base(*this);
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent != 0) base = base * base;
  }
  return result;
}

std::map<std::uint32_t, Polynomial> Polynomial::coefficients_in(Variable v) const {
  std::map<std::uint32_t, Polynomial> out;
  for (const auto& [m, c] : terms_) {
    out[m.degree_in(v)].add_term(m.without(v), c);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

Polynomial Polynomial::from_coefficients(Variable v,
                                         const std::map<std::uint32_t, Polynomial>& coefficients) {
  Polynomial result;
  for (const auto& [e, coeff] : coefficients) {
    Monomial power(v, e);
    for (const auto& [m, c] : coeff.terms_) result.add_term(m * power, c);
  }
  return result;
}

Polynomial Polynomial::substitute(const std::map<Variable, Polynomial>& values) const {
  // Cache powers of each substituted value.
  std::map<Variable, std::vector<Polynomial>> powers;
  auto power_of = [&](Variable v, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.emplace_back(BigRational(1));
    while (cache.size() <= e) cache.push_back(cache.back() * values.at(v));
    return cache[e];
  };
  Polynomial result;
  for (const auto& [m, c] : terms_) {
    std::vector<Monomial::Factor> kept;
    Polynomial factor(c);
    for (const auto& [v, e] : m.factors()) {
      if (values.count(v)) {
        factor = factor * power_of(v, e);
      } else {
        kept.emplace_back(v, e);
      }
    }
    if (factor.is_zero()) continue;
    result += factor.times(Monomial::from_factors(std::move(kept)));
  }
  return result;
}

Polynomial Polynomial::renamed(const std::map<Variable, Variable>& renaming) const {
  Polynomial result;
  for (const auto& [m, c] : terms_) result.add_term(m.renamed(renaming), c);
  return result;
}

BigRational Polynomial::evaluate(const std::map<Variable, BigRational>& point) const {
  BigRational sum(0);
  for (const auto& [m, c] : terms_) {
    BigRational value(c);
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) {
        throw ContractViolation("no value supplied for variable " + v.name());
      }
      value *= rational_pow(it->second, e);
    }
    sum += value;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    BigRational magnitude = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      out << algebra::to_string(magnitude);
    } else if (magnitude == 1) {
      out << m.to_string();
    } else {
      out << algebra::to_string(magnitude) << '*' << m.to_string();
    }
  }
  return out.str();
}

// ---- division and content --------------------------------------------------

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw ContractViolation("division by the zero polynomial");
  if (a.is_zero()) return Polynomial{};
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  const auto& lead_m = b.leading_monomial();
  const auto& lead_c = b.leading_coefficient();
  if (a.total_degree() < b.total_degree()) return std::nullopt;
  Polynomial remainder(a);
  Polynomial quotient;
  while (!remainder.is_zero()) {
    auto q_m = remainder.leading_monomial().divide(lead_m);
    if (!q_m) return std::nullopt;
    BigRational q_c = remainder.leading_coefficient() / lead_c;
    remainder -= b.times(*q_m).scaled(q_c);
    quotient += Polynomial::term(q_c, std::move(*q_m));
  }
  return quotient;
}

BigRational unit_content(const Polynomial& p) {
  if (p.is_zero()) throw ContractViolation("content of the zero polynomial");
  BigInteger num_gcd(0);
  BigInteger den_lcm(1);
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  BigRational content(num_gcd, den_lcm);
  content.canonicalize();
  if (p.leading_coefficient() < 0) content = -content;
  return content;
}

Polynomial primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / unit_content(p));
}

}  // namespace ostrovsky::algebra
