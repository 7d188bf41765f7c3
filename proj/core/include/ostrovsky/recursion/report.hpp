#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "ostrovsky/recursion/recursion.hpp"

namespace ostrovsky::recursion {

/// {equation, omega, a[], phi[], first_obstruction, verdict, necessary_condition_disclaimer}.
/// Symbolic entries use the RationalFunction debug format.
nlohmann::ordered_json report_json(const std::string& equation_text, const EvolutionEquation& eq,
                                   const LocalityReport& report);

}  // namespace ostrovsky::recursion
