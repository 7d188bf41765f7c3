#include <string>

#include "ostrovsky/algebra/symmetrize.hpp"
#include "ostrovsky/equation/equation.hpp"
#include "ostrovsky/errors.hpp"

namespace ostrovsky::equation {

using algebra::BigRational;
using algebra::Monomial;
using algebra::Polynomial;
using algebra::Variable;

std::span<const DiffMonomial> GradedEquation::part(int degree) const {
  auto it = parts.find(degree);
  if (it == parts.end()) return {};
  return it->second;
}

GradedEquation grade(std::span<const DiffMonomial> monomials, int max_degree) {
  GradedEquation graded;
  for (const auto& m : monomials) {
    if (m.degree() == 0) throw UnsupportedEquation("constant term " + m.coefficient.to_string() + " is not homogeneous in u");
    if (m.degree() > max_degree) {
      throw UnsupportedEquation("term of degree " + std::to_string(m.degree()) + " exceeds the supported maximum " +
                                std::to_string(max_degree));
    }
    graded.parts[m.degree()].push_back(m);
  }
  if (graded.parts.count(1) == 0) throw UnsupportedEquation("equation has no linear part");
  return graded;
}

RationalFunction symbol(const DiffMonomial& monomial) {
  std::vector<Monomial::Factor> powers;
  Polynomial sum;
  for (int i = 0; i < monomial.degree(); ++i) {
    Variable x = Variable::xi(i + 1);
    powers.emplace_back(x, static_cast<std::uint32_t>(monomial.factors[static_cast<std::size_t>(i)]));
    sum += Polynomial(x);
  }
  RationalFunction s = monomial.coefficient * RationalFunction(Polynomial::term(1, Monomial::from_factors(powers)));
  if (monomial.inverse_d_count > 0) s /= RationalFunction(sum.pow(static_cast<unsigned>(monomial.inverse_d_count)));
  return s;
}

EvolutionEquation to_symbols(const GradedEquation& graded) {
  EvolutionEquation eq;
  eq.max_degree = graded.max_degree();
  for (const auto& m : graded.part(1)) eq.omega += symbol(m);
  if (eq.omega.is_zero()) throw UnsupportedEquation("linear symbol vanishes identically");
  for (int degree = 2; degree <= eq.max_degree; ++degree) {
    RationalFunction total;
    for (const auto& m : graded.part(degree)) total += symbol(m);
    auto over = algebra::xi_range(degree);
    // F_m corresponds to (u^m / m) * a_{m-1}.
    eq.a.push_back(algebra::symmetrize(total, over) * RationalFunction(BigRational(degree)));
  }
  return eq;
}

RationalFunction EvolutionEquation::a_k(int k) const {
  if (k < 1 || k > static_cast<int>(a.size())) return RationalFunction();
  return a[static_cast<std::size_t>(k - 1)];
}

EvolutionEquation EvolutionEquation::substitute(const std::map<Variable, Polynomial>& values) const {
  EvolutionEquation out;
  out.max_degree = max_degree;
  out.omega = omega.substitute(values);
  for (const auto& ak : a) out.a.push_back(ak.substitute(values));
  return out;
}

}  // namespace ostrovsky::equation
