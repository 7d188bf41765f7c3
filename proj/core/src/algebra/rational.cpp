#include "ostrovsky/algebra/rational.hpp"

#include <string>

#include "ostrovsky/errors.hpp"

namespace ostrovsky::algebra {
namespace {

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  auto num_text = text.substr(0, slash);
  auto den_text = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num_text) || !valid_integer(den_text) || den_text[0] == '-' || den_text[0] == '+') {
    throw MalformedInput("not a rational number: '" + std::string(text) + "'");
  }
  if (num_text[0] == '+') num_text.remove_prefix(1);
  BigInteger num(std::string(num_text), 10);
  BigInteger den(std::string(den_text), 10);
  if (den == 0) throw MalformedInput("zero denominator in '" + std::string(text) + "'");
  BigRational value(num, den);
  value.canonicalize();
  return value;
}

std::string to_string(const BigRational& value) { return value.get_str(10); }

}  // namespace ostrovsky::algebra
