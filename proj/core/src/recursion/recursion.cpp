#include "ostrovsky/recursion/recursion.hpp"

#include <map>
#include <string>

#include "ostrovsky/algebra/symmetrize.hpp"
#include "ostrovsky/errors.hpp"

namespace ostrovsky::recursion {
namespace {

using algebra::BigRational;

Polynomial xi_sum(int from, int to) {
  Polynomial sum;
  for (int i = from; i <= to; ++i) sum += Polynomial(Variable::xi(i));
  return sum;
}

// f(args[0], ..., args[k-1], eta_arg) for f in xi1..xi_k (and eta).
RationalFunction evaluate_at(const RationalFunction& f, const std::vector<Polynomial>& args,
                       const std::optional<Polynomial>& eta_arg = std::nullopt) {
  std::map<Variable, Polynomial> values;
  for (std::size_t j = 0; j < args.size(); ++j) values.emplace(Variable::xi(static_cast<int>(j) + 1), args[j]);
  if (eta_arg) values.emplace(Variable::eta(), *eta_arg);
  return f.substitute(values);
}

std::vector<Polynomial> xis(int from, int to) {
  std::vector<Polynomial> out;
  for (int i = from; i <= to; ++i) out.emplace_back(Variable::xi(i));
  return out;
}

LaurentSeries expand_to(const RationalFunction& f, int depth) {
  if (!f.is_zero()) {
    const Variable eta = Variable::eta();
    int start = static_cast<int>(f.denominator().degree_in(eta)) - static_cast<int>(f.numerator().degree_in(eta));
    if (depth < start) return LaurentSeries(eta, start, depth, {});
  } else if (depth < 0) {
    return LaurentSeries(Variable::eta(), 0, depth, {});
  }
  return algebra::laurent_expand(f, depth);
}

}  // namespace

const char* const kNecessaryConditionDisclaimer =
    "Locality of the recursion-operator coefficients is a necessary condition for integrability. "
    "An obstruction proves the equation is not integrable; the absence of obstructions up to the "
    "computed order and depth does not prove integrability.";

std::string to_string(Verdict v) {
  return v == Verdict::ObstructionFound ? "obstruction-found" : "no-obstruction-up-to-depth";
}

RationalFunction n_omega(const RationalFunction& omega, std::span<const Polynomial> args) {
  if (args.empty()) throw ContractViolation("N^omega needs at least one argument");
  const Variable x = Variable::xi(1);
  Polynomial total;
  RationalFunction difference;
  for (const auto& arg : args) {
    total += arg;
    difference -= omega.substitute({{x, arg}});
  }
  difference += omega.substitute({{x, total}});
  if (difference.is_zero()) {
    throw DegenerateDispersion("omega(sum) - sum omega vanishes identically for omega = " + omega.to_string());
  }
  return RationalFunction(1) / difference;
}

RationalFunction n_omega(const RationalFunction& omega, std::span<const Variable> args) {
  std::vector<Polynomial> polys;
  for (Variable v : args) polys.emplace_back(v);
  return n_omega(omega, polys);
}

RationalFunction operator_symbol(const PhiCoefficient& phi) {
  return phi.order == 1 ? phi.value : phi.value / RationalFunction(phi.order);
}

PhiCoefficient phi_1(const EvolutionEquation& eq, int depth) { return phi_m(eq, 1, {}, depth); }

PhiCoefficient phi_m(const EvolutionEquation& eq, int m, std::span<const PhiCoefficient> prior, int depth) {
  if (m < 1) throw ContractViolation("phi order must be at least 1");
  if (static_cast<int>(prior.size()) < m - 1) {
    throw ContractViolation("phi_" + std::to_string(m) + " needs phi_1..phi_" + std::to_string(m - 1));
  }
  for (int n = 1; n < m; ++n) {
    if (prior[static_cast<std::size_t>(n - 1)].order != n) {
      throw ContractViolation("prior coefficients must be phi_1..phi_" + std::to_string(m - 1) + " in order");
    }
  }
  const Polynomial eta(Variable::eta());
  std::vector<Polynomial> args = xis(1, m);
  args.push_back(eta);
  RationalFunction prefactor = n_omega(eq.omega, args);

  // (xi1 + ... + xi_m) a_m(xi1, ..., xi_m, eta)
  RationalFunction braces = RationalFunction(xi_sum(1, m)) * evaluate_at(eq.a_k(m), args);

  RationalFunction sum;
  for (int n = 1; n < m; ++n) {
    const RationalFunction phi = operator_symbol(prior[static_cast<std::size_t>(n - 1)]);
    const RationalFunction a = eq.a_k(m - n);
    if (phi.is_zero() || a.is_zero()) continue;

    // n/(m-n+1) phi_n(xi1..xi_{n-1}, xi_n+..+xi_m, eta) a_{m-n}(xi_n..xi_m)
    std::vector<Polynomial> phi_args = xis(1, n - 1);
    phi_args.push_back(xi_sum(n, m));
    sum += RationalFunction(BigRational(n, m - n + 1)) * evaluate_at(phi, phi_args, eta) * evaluate_at(a, xis(n, m));

    // + phi_n(xi1..xi_n, eta + xi_{n+1} + .. + xi_m) a_{m-n}(xi_{n+1}..xi_m, eta)
    std::vector<Polynomial> a_args = xis(n + 1, m);
    a_args.push_back(eta);
    sum += evaluate_at(phi, xis(1, n), eta + xi_sum(n + 1, m)) * evaluate_at(a, a_args);

    // - phi_n(xi1..xi_n, eta) a_{m-n}(xi_{n+1}..xi_m, eta + xi1 + .. + xi_n)
    a_args.back() = eta + xi_sum(1, n);
    sum -= evaluate_at(phi, xis(1, n), eta) * evaluate_at(a, a_args);
  }
  if (!sum.is_zero()) {
    auto over = algebra::xi_range(m);
    braces += algebra::symmetrize(sum, over);
  }
  RationalFunction value = braces.is_zero() ? RationalFunction() : RationalFunction(m) * prefactor * braces;
  return PhiCoefficient{m, value, expand_to(value, depth)};
}

std::vector<LocalityEntry> locality_test(const PhiCoefficient& phi) {
  std::vector<LocalityEntry> entries;
  const auto over = algebra::xi_range(phi.order);
  for (int n = phi.expansion.start_order(); n <= phi.expansion.depth(); ++n) {
    RationalFunction c = phi.expansion.coefficient(n);
    bool local = algebra::is_polynomial_in_xi(c) && algebra::is_symmetric(c, over);
    entries.push_back(LocalityEntry{phi.order, n, std::move(c), local});
  }
  return entries;
}

LocalityReport verdict(const EvolutionEquation& eq, const VerdictOptions& options) {
  if (options.max_order < 1) throw ContractViolation("max order must be at least 1");
  if (options.depth < 1) throw ContractViolation("depth must be at least 1");
  LocalityReport report;
  report.max_order = options.max_order;
  report.depth = options.depth;
  for (int m = 1; m <= options.max_order; ++m) {
    report.phi.push_back(phi_m(eq, m, report.phi, options.depth));
    for (auto& entry : locality_test(report.phi.back())) {
      if (!entry.is_local && !report.first_obstruction) report.first_obstruction = entry;
      report.entries.push_back(std::move(entry));
    }
    if (report.first_obstruction && !options.exhaustive) break;
  }
  report.verdict = report.first_obstruction ? Verdict::ObstructionFound : Verdict::NoObstructionUpToDepth;
  return report;
}

}  // namespace ostrovsky::recursion
