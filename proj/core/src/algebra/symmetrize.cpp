#include "ostrovsky/algebra/symmetrize.hpp"

#include <algorithm>
#include <vector>

#include "ostrovsky/errors.hpp"

namespace ostrovsky::algebra {
namespace {

void check_symmetrization_set(std::span<const Variable> over) {
  std::vector<Variable> sorted(over.begin(), over.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ContractViolation("symmetrization set lists a variable twice");
  }
  for (Variable v : over) {
    if (!v.is_xi()) throw ContractViolation("cannot symmetrize over " + v.name());
  }
}

// Calls visit(renaming) for every permutation of `over`.
template <typename Visit>
void for_each_permutation(std::span<const Variable> over, Visit&& visit) {
  std::vector<Variable> image(over.begin(), over.end());
  std::sort(image.begin(), image.end());
  std::vector<Variable> source(image);
  do {
    std::map<Variable, Variable> renaming;
    for (std::size_t i = 0; i < source.size(); ++i) renaming.emplace(source[i], image[i]);
    visit(renaming);
  } while (std::next_permutation(image.begin(), image.end()));
}

BigRational factorial(std::size_t n) {
  BigInteger f(1);
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return BigRational(f);
}

}  // namespace

Polynomial symmetrize(const Polynomial& f, std::span<const Variable> over) {
  check_symmetrization_set(over);
  if (over.size() < 2) return f;
  Polynomial sum;
  for_each_permutation(over, [&](const auto& renaming) { sum += f.renamed(renaming); });
  return sum.scaled(1 / factorial(over.size()));
}

RationalFunction symmetrize(const RationalFunction& f, std::span<const Variable> over) {
  check_symmetrization_set(over);
  if (over.size() < 2) return f;
  // Images sharing a denominator are summed numerator-wise before any
  // rational addition.
  std::vector<std::pair<Polynomial, Polynomial>> groups;  // (den, summed num)
  for_each_permutation(over, [&](const auto& renaming) {
    Polynomial den = f.denominator().renamed(renaming);
    Polynomial num = f.numerator().renamed(renaming);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == den; });
    if (it == groups.end()) {
      groups.emplace_back(std::move(den), std::move(num));
    } else {
      it->second += num;
    }
  });
  RationalFunction sum;
  for (auto& [den, num] : groups) sum += RationalFunction(std::move(num), std::move(den));
  return sum * RationalFunction(1 / factorial(over.size()));
}

bool is_symmetric(const RationalFunction& f, std::span<const Variable> over) {
  check_symmetrization_set(over);
  for (std::size_t i = 0; i + 1 < over.size(); ++i) {
    std::map<Variable, Variable> swap{{over[i], over[i + 1]}, {over[i + 1], over[i]}};
    // Canonical forms of equal functions coincide, and renaming preserves the
    // gcd-free property, so compare by cross-multiplication without re-normalizing.
    Polynomial num = f.numerator().renamed(swap);
    Polynomial den = f.denominator().renamed(swap);
    if (num * f.denominator() != f.numerator() * den) return false;
  }
  return true;
}

std::vector<Variable> xi_range(int count) {
  std::vector<Variable> vars;
  for (int i = 1; i <= count; ++i) vars.push_back(Variable::xi(i));
  return vars;
}

}  // namespace ostrovsky::algebra
