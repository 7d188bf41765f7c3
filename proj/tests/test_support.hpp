#pragma once

#include <random>
#include <vector>

#include "ostrovsky/algebra/polynomial.hpp"
#include "ostrovsky/algebra/rational_function.hpp"

namespace ostrovsky::testing {

using algebra::BigRational;
using algebra::Monomial;
using algebra::Polynomial;
using algebra::RationalFunction;
using algebra::Variable;

inline Variable xi(int i) { return Variable::xi(i); }
inline Variable eta() { return Variable::eta(); }
inline Polynomial P(Variable v) { return Polynomial(v); }
inline Polynomial C(long num, long den = 1) { return Polynomial(BigRational(num, den)); }

/// Random polynomial with small integer coefficients over `vars`.
inline Polynomial random_polynomial(std::mt19937_64& rng, const std::vector<Variable>& vars,
                                    int max_terms, int max_exponent) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> terms(1, max_terms);
  std::uniform_int_distribution<int> exponent(0, max_exponent);
  Polynomial p;
  int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    std::vector<Monomial::Factor> factors;
    for (Variable v : vars) factors.emplace_back(v, exponent(rng));
    p += Polynomial::term(BigRational(coeff(rng)), Monomial::from_factors(std::move(factors)));
  }
  return p;
}

inline Polynomial random_nonzero_polynomial(std::mt19937_64& rng, const std::vector<Variable>& vars,
                                            int max_terms, int max_exponent) {
  Polynomial p;
  while (p.is_zero()) p = random_polynomial(rng, vars, max_terms, max_exponent);
  return p;
}

inline BigRational random_rational(std::mt19937_64& rng, int range = 9) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, range);
  BigRational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace ostrovsky::testing
