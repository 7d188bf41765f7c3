#include "ostrovsky/algebra/variable.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ostrovsky/errors.hpp"

namespace ostrovsky::algebra {
namespace {

// Interned parameter names. beta and gamma always hold slots 0 and 1.
struct ParameterTable {
  std::mutex mutex;
  std::vector<std::string> names{"beta", "gamma"};
};

ParameterTable& parameter_table() {
  static ParameterTable table;
  return table;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::optional<int> parse_xi_name(std::string_view name) {
  if (name.size() < 3 || name.substr(0, 2) != "xi") return std::nullopt;
  int index = 0;
  auto digits = name.substr(2);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || index < 1) return std::nullopt;
  return index;
}

}  // namespace

Variable Variable::xi(int index) {
  if (index < 1 || static_cast<std::uint32_t>(index) >= kParameterBase) {
    throw ContractViolation("xi index out of range: " + std::to_string(index));
  }
  return Variable(static_cast<std::uint32_t>(index));
}

Variable Variable::parameter(std::string_view name) {
  if (!is_identifier(name) || name == "eta" || parse_xi_name(name)) {
    throw MalformedInput("invalid parameter name '" + std::string(name) + "'");
  }
  auto& table = parameter_table();
  std::lock_guard lock(table.mutex);
  auto it = std::find(table.names.begin(), table.names.end(), name);
  if (it == table.names.end()) {
    table.names.emplace_back(name);
    it = std::prev(table.names.end());
  }
  return Variable(kParameterBase + static_cast<std::uint32_t>(it - table.names.begin()));
}

Variable Variable::from_name(std::string_view name) {
  if (name == "eta") return eta();
  if (auto index = parse_xi_name(name)) return xi(*index);
  return parameter(name);
}

Variable::Kind Variable::kind() const noexcept {
  if (id_ == 0) return Kind::Eta;
  if (id_ < kParameterBase) return Kind::Xi;
  return Kind::Parameter;
}

std::string Variable::name() const {
  switch (kind()) {
    case Kind::Eta:
      return "eta";
    case Kind::Xi:
      return "xi" + std::to_string(id_);
    case Kind::Parameter: {
      auto& table = parameter_table();
      std::lock_guard lock(table.mutex);
      return table.names.at(id_ - kParameterBase);
    }
  }
  return {};
}

}  // namespace ostrovsky::algebra
