#include "ostrovsky/recursion/report.hpp"

namespace ostrovsky::recursion {

nlohmann::ordered_json report_json(const std::string& equation_text, const EvolutionEquation& eq,
                                   const LocalityReport& report) {
  using nlohmann::ordered_json;
  ordered_json out;
  out["equation"] = equation_text;
  out["omega"] = eq.omega.to_string();
  ordered_json a = ordered_json::array();
  for (std::size_t k = 0; k < eq.a.size(); ++k) {
    a.push_back({{"k", k + 1}, {"value", eq.a[k].to_string()}});
  }
  out["a"] = std::move(a);

  ordered_json phis = ordered_json::array();
  for (const auto& phi : report.phi) {
    ordered_json expansion = ordered_json::array();
    for (const auto& entry : report.entries) {
      if (entry.m != phi.order) continue;
      expansion.push_back({{"n", entry.n}, {"coefficient", entry.coefficient.to_string()}, {"is_local", entry.is_local}});
    }
    phis.push_back({{"m", phi.order}, {"value", phi.value.to_string()}, {"expansion", std::move(expansion)}});
  }
  out["phi"] = std::move(phis);
  if (report.first_obstruction) {
    const auto& o = *report.first_obstruction;
    out["first_obstruction"] = {{"m", o.m}, {"n", o.n}, {"coefficient", o.coefficient.to_string()}};
  } else {
    out["first_obstruction"] = nullptr;
  }
  out["verdict"] = to_string(report.verdict);
  out["max_order"] = report.max_order;
  out["depth"] = report.depth;
  out["necessary_condition_disclaimer"] = kNecessaryConditionDisclaimer;
  return out;
}

}  // namespace ostrovsky::recursion
