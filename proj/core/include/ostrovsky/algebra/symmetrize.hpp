#pragma once

#include <span>

#include "ostrovsky/algebra/rational_function.hpp"

namespace ostrovsky::algebra {

/// Average of f over all permutations of the xi variables in `over`.
/// Throws ContractViolation if `over` holds eta, a parameter, or a repeat.
RationalFunction symmetrize(const RationalFunction& f, std::span<const Variable> over);
Polynomial symmetrize(const Polynomial& f, std::span<const Variable> over);

/// Invariance under every transposition of `over` (checked on adjacent
/// transpositions, which generate the symmetric group).
bool is_symmetric(const RationalFunction& f, std::span<const Variable> over);

/// xi1..xi_count.
std::vector<Variable> xi_range(int count);

}  // namespace ostrovsky::algebra
