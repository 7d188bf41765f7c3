#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace ostrovsky::algebra {

/// A polynomial variable: the large symbol eta, a symbol xi_k (k >= 1), or a
/// named parameter such as beta or gamma.
///
/// Variables are totally ordered by significance eta > xi1 > xi2 > ... > beta
/// > gamma > (other parameters in order of first use). The ordering drives the
/// graded-lex monomial order and therefore sign normalization and rendering.
class Variable {
 public:
  enum class Kind : std::uint8_t { Eta, Xi, Parameter };

  static Variable eta() { return Variable(0); }
  static Variable xi(int index);
  static Variable parameter(std::string_view name);
  static Variable beta() { return Variable(kParameterBase); }
  static Variable gamma() { return Variable(kParameterBase + 1); }

  /// Inverse of name(): "eta", "xi3", or a parameter name.
  static Variable from_name(std::string_view name);

  Kind kind() const noexcept;
  bool is_eta() const noexcept { return id_ == 0; }
  bool is_xi() const noexcept { return kind() == Kind::Xi; }
  bool is_parameter() const noexcept { return kind() == Kind::Parameter; }
  /// Only meaningful for xi variables.
  int xi_index() const noexcept { return static_cast<int>(id_); }

  std::string name() const;

  /// Smaller ids are more significant.
  std::uint32_t id() const noexcept { return id_; }

  friend auto operator<=>(Variable, Variable) = default;

 private:
  static constexpr std::uint32_t kParameterBase = 1u << 20;

  explicit Variable(std::uint32_t id) : id_(id) {}

  std::uint32_t id_;
};

}  // namespace ostrovsky::algebra

template <>
struct std::hash<ostrovsky::algebra::Variable> {
  std::size_t operator()(ostrovsky::algebra::Variable v) const noexcept {
    return std::hash<std::uint32_t>{}(v.id());
  }
};
