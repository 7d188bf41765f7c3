#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ostrovsky/algebra/laurent.hpp"
#include "ostrovsky/equation/equation.hpp"

namespace ostrovsky::recursion {

using algebra::LaurentSeries;
using algebra::Polynomial;
using algebra::RationalFunction;
using algebra::Variable;
using equation::EvolutionEquation;

/// Coefficient phi_m(xi1..xi_m, eta) of the formal recursion operator, with
/// its expansion at eta -> infinity.
///
/// `value` uses the same normalization as the equation symbols:
/// Lambda = eta + u*phi_1 + (u^2/2)*phi_2 + (u^3/3)*phi_3 + ...
/// operator_symbol() gives the plain coefficient of u^m.
struct PhiCoefficient {
  int order = 0;
  RationalFunction value;
  LaurentSeries expansion;
};

/// 1 / (omega(sum args) - sum omega(arg)). Arguments are arbitrary
/// polynomials (typically single variables or sums of them).
/// Throws ContractViolation on empty args, DegenerateDispersion when the
/// difference vanishes identically.
RationalFunction n_omega(const RationalFunction& omega, std::span<const Polynomial> args);
RationalFunction n_omega(const RationalFunction& omega, std::span<const Variable> args);

/// Coefficient of u^m in Lambda, i.e. value / m.
RationalFunction operator_symbol(const PhiCoefficient& phi);

/// phi_1 = N(xi1, eta) * xi1 * a_1(xi1, eta).
PhiCoefficient phi_1(const EvolutionEquation& eq, int depth);

/// phi_m for m >= 2 from phi_1..phi_{m-1} (prior[n-1] = phi_n). Throws
/// ContractViolation when a prior coefficient is missing.
PhiCoefficient phi_m(const EvolutionEquation& eq, int m, std::span<const PhiCoefficient> prior, int depth);

struct LocalityEntry {
  int m = 0;
  int n = 0;
  RationalFunction coefficient;
  bool is_local = true;
};

/// One row per order n from the series' start through its depth, zeros included.
/// A coefficient is local when it is a polynomial in the xi variables and
/// symmetric in xi1..xi_m.
std::vector<LocalityEntry> locality_test(const PhiCoefficient& phi);

enum class Verdict { NoObstructionUpToDepth, ObstructionFound };

std::string to_string(Verdict v);

struct LocalityReport {
  std::vector<PhiCoefficient> phi;
  std::vector<LocalityEntry> entries;
  std::optional<LocalityEntry> first_obstruction;
  Verdict verdict = Verdict::NoObstructionUpToDepth;
  int max_order = 0;
  int depth = 0;
};

/// Passing the test is necessary for integrability, never sufficient.
extern const char* const kNecessaryConditionDisclaimer;

struct VerdictOptions {
  int max_order = 2;
  int depth = 6;
  /// Keep computing higher orders after an obstruction.
  bool exhaustive = false;
};

/// Runs phi_1..phi_max_order with locality tests. An obstruction proves
/// nonintegrability; its absence up to the requested depth proves nothing.
LocalityReport verdict(const EvolutionEquation& eq, const VerdictOptions& options = {});

}  // namespace ostrovsky::recursion
