#include <doctest.h>

#include <random>

#include "ostrovsky/algebra/symmetrize.hpp"
#include "ostrovsky/equation/equation.hpp"
#include "ostrovsky/errors.hpp"
#include "test_support.hpp"

using namespace ostrovsky;
using namespace ostrovsky::algebra;
using namespace ostrovsky::equation;
using namespace ostrovsky::testing;

namespace {

RationalFunction beta_rf() { return RationalFunction::variable(Variable::beta()); }
RationalFunction gamma_rf() { return RationalFunction::variable(Variable::gamma()); }

EvolutionEquation symbols_of(const std::string& text) { return to_symbols(grade(parse(text))); }

}  // namespace

TEST_CASE("parse the Ostrovsky form") {
  auto monomials = parse(*builtin_equation("ostrovsky"));
  REQUIRE(monomials.size() == 3);
  // gamma * Dinv(u)
  CHECK(monomials[0] == DiffMonomial{gamma_rf(), {0}, 1});
  // beta * Dinv(D4(u))
  CHECK(monomials[1] == DiffMonomial{beta_rf(), {4}, 1});
  // -2 * u * D1(u)
  CHECK(monomials[2] == DiffMonomial{RationalFunction(-2), {0, 1}, 0});
}

TEST_CASE("parse simple forms") {
  auto kdv_linear = parse("u_t = beta*D3(u)");
  REQUIRE(kdv_linear.size() == 1);
  CHECK(kdv_linear[0] == DiffMonomial{beta_rf(), {3}, 0});

  auto cubic = parse("u_t = u*u*D1(u)");
  REQUIRE(cubic.size() == 1);
  CHECK(cubic[0].factors == std::vector<int>{0, 0, 1});

  // Leibniz: D1(u*u) = 2 u u_x
  auto leibniz = parse("u_t = D1(u*u)");
  REQUIRE(leibniz.size() == 1);
  CHECK(leibniz[0] == DiffMonomial{RationalFunction(2), {0, 1}, 0});

  // D cancels Dinv; D0 is the identity.
  CHECK(parse("u_t = D1(Dinv(u))") == parse("u_t = D0(u)"));
  // Rational literals and named constants.
  auto scaled = parse("u_t = 1/2*kappa*D2(u)");
  REQUIRE(scaled.size() == 1);
  CHECK(scaled[0].coefficient ==
        RationalFunction(Polynomial(Variable::parameter("kappa")), Polynomial(BigRational(2))));
}

TEST_CASE("parse errors carry positions") {
  auto check_error = [](const std::string& text, std::size_t line, std::size_t column) {
    try {
      parse(text);
      FAIL("expected a parse error for " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
    }
  };
  check_error("u_t = u +", 1, 10);
  check_error("u_t = u_t + u", 1, 7);
  check_error("u_t = u / u", 1, 11);
  check_error("u_t = u\n  * (u", 2, 7);
  check_error("v_t = u", 1, 1);
  check_error("u_t = u $ u", 1, 9);
  check_error("u_t = u*Dinv(u)", 1, 8);
  check_error("u_t = Dinv(3)", 1, 7);
  check_error("u_t = xi1*u", 1, 7);
}

TEST_CASE("render round trip") {
  for (std::string text : {*builtin_equation("ostrovsky"), *builtin_equation("kdv"),
                           std::string("u_t = -u*u*D1(u) + (beta + gamma)/3*D5(u) - D2(u*D1(u))"),
                           std::string("u_t = 2/(3*beta)*Dinv(Dinv(u*u)) + D3(u)")}) {
    auto first = parse(text);
    auto rendered = render(first);
    CAPTURE(rendered);
    CHECK(parse(rendered) == first);
  }
  CHECK(render(parse(*builtin_equation("kdv"))) == "u_t = beta*D3(u) - 2*u*D1(u)");
}

TEST_CASE("grading") {
  auto graded = grade(parse(*builtin_equation("ostrovsky")));
  CHECK(graded.part(1).size() == 2);
  CHECK(graded.part(2).size() == 1);
  CHECK(graded.part(3).empty());
  CHECK(graded.max_degree() == 2);

  auto mixed = grade(parse("u_t = D3(u) + u*u*D1(u)"));
  CHECK(mixed.part(3).size() == 1);
  CHECK(mixed.part(2).empty());

  CHECK_THROWS_AS(grade(parse("u_t = u*D1(u)")), UnsupportedEquation);
  CHECK_THROWS_AS(grade(parse("u_t = D3(u) + u*u*u*D1(u)")), UnsupportedEquation);
  CHECK_NOTHROW(grade(parse("u_t = D3(u) + u*u*u*D1(u)"), 4));
  CHECK_THROWS_AS(grade(parse("u_t = D3(u) + 1")), UnsupportedEquation);
}

TEST_CASE("symbols of the Ostrovsky equation") {
  auto eq = symbols_of(*builtin_equation("ostrovsky"));
  Polynomial x1(xi(1));
  CHECK(eq.omega == RationalFunction(Polynomial(Variable::beta()) * x1.pow(4) + Polynomial(Variable::gamma()), x1));
  REQUIRE(eq.a.size() == 1);
  CHECK(eq.a[0] == RationalFunction(C(-2) * (x1 + P(xi(2)))));
  CHECK(eq.a_k(2).is_zero());
}

TEST_CASE("symbols of KdV and cubic terms") {
  auto kdv = symbols_of(*builtin_equation("kdv"));
  CHECK(kdv.omega == RationalFunction(Polynomial(Variable::beta()) * P(xi(1)).pow(3)));

  auto cubic = symbols_of("u_t = D3(u) + u*u*D1(u)");
  REQUIRE(cubic.a.size() == 2);
  CHECK(cubic.a[0].is_zero());
  CHECK(cubic.a[1] == RationalFunction(P(xi(1)) + P(xi(2)) + P(xi(3))));

  // gamma -> 0 in the Ostrovsky symbols gives the KdV symbols.
  auto ost = symbols_of(*builtin_equation("ostrovsky"));
  CHECK(ost.substitute({{Variable::gamma(), Polynomial()}}) == kdv);
}

TEST_CASE("every a_k is symmetric") {
  auto eq = symbols_of("u_t = D3(u) + u*D2(u) + D1(u)*D1(u) + u*u*D3(u) + Dinv(u*D1(u)*D2(u))");
  for (std::size_t k = 0; k < eq.a.size(); ++k) {
    CHECK(is_symmetric(eq.a[k], xi_range(static_cast<int>(k) + 2)));
  }
}

TEST_CASE("homogeneity under u -> lambda u") {
  Polynomial lam(Variable::parameter("lambda"));
  auto plain = symbols_of("u_t = Dinv(beta*D4(u) + gamma*u) - 2*u*D1(u) + u*u*D1(u)");
  auto scaled = symbols_of(
      "u_t = Dinv(beta*D4(lambda*u) + gamma*lambda*u) - 2*(lambda*u)*D1(lambda*u) + "
      "(lambda*u)*(lambda*u)*D1(lambda*u)");
  CHECK(scaled.omega == plain.omega * RationalFunction(lam));
  for (std::size_t k = 0; k < plain.a.size(); ++k) {
    CHECK(scaled.a[k] == plain.a[k] * RationalFunction(lam.pow(static_cast<unsigned>(k + 2))));
  }
}

TEST_CASE("dispersion consistency with plane waves") {
  // u = exp(i k x): the linear part multiplies by omega(i k).
  auto eq = symbols_of(*builtin_equation("ostrovsky"));
  // At xi1 = 2 (real stand-in for i k), beta = 3, gamma = 5: (3*16 + 5)/2.
  std::map<Variable, BigRational> point{{xi(1), 2}, {Variable::beta(), 3}, {Variable::gamma(), 5}};
  CHECK(eq.omega.evaluate(point) == BigRational(53, 2));
}
