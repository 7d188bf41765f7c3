#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

#include "ostrovsky/equation/equation.hpp"
#include "ostrovsky/errors.hpp"

namespace ostrovsky::equation {
namespace {

using algebra::BigRational;
using algebra::Polynomial;
using algebra::Variable;

enum class TokenKind { Number, Identifier, Plus, Minus, Star, Slash, LParen, RParen, Equals, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_space();
      std::size_t line = line_, column = column_;
      if (pos_ >= text_.size()) {
        tokens.push_back({TokenKind::End, "", line, column});
        return tokens;
      }
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += advance();
        tokens.push_back({TokenKind::Number, digits, line, column});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string ident;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          ident += advance();
        }
        tokens.push_back({TokenKind::Identifier, ident, line, column});
      } else {
        TokenKind kind;
        switch (c) {
          case '+': kind = TokenKind::Plus; break;
          case '-': kind = TokenKind::Minus; break;
          case '*': kind = TokenKind::Star; break;
          case '/': kind = TokenKind::Slash; break;
          case '(': kind = TokenKind::LParen; break;
          case ')': kind = TokenKind::RParen; break;
          case '=': kind = TokenKind::Equals; break;
          default:
            throw ParseError(line, column, std::string("unexpected character '") + c + "'");
        }
        tokens.push_back({kind, std::string(1, advance()), line, column});
      }
    }
  }

 private:
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// Key of a differential monomial; coefficients live in the map value.
struct Shape {
  std::vector<int> factors;
  int inverse_d_count = 0;

  int degree() const { return static_cast<int>(factors.size()); }

  friend bool operator<(const Shape& a, const Shape& b) {
    return std::tuple(a.degree(), a.inverse_d_count, a.factors) <
           std::tuple(b.degree(), b.inverse_d_count, b.factors);
  }
};

// A differential polynomial under construction.
using Value = std::map<Shape, RationalFunction>;

void accumulate(Value& v, const Shape& s, const RationalFunction& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = v.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

Value constant(const RationalFunction& c) {
  Value v;
  accumulate(v, Shape{}, c);
  return v;
}

bool is_constant(const Value& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& kv) { return kv.first.degree() == 0; });
}

RationalFunction constant_part(const Value& v) {
  auto it = v.find(Shape{});
  return it == v.end() ? RationalFunction() : it->second;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Value equation() {
    const Token& lhs = peek();
    if (lhs.kind != TokenKind::Identifier || lhs.text != "u_t") {
      throw ParseError(lhs.line, lhs.column, "equation must start with 'u_t ='");
    }
    next();
    expect(TokenKind::Equals, "'='");
    Value v = expr();
    if (peek().kind != TokenKind::End) fail(peek(), "unexpected '" + peek().text + "'");
    return v;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    throw ParseError(t.line, t.column, what);
  }

  const Token& expect(TokenKind kind, const std::string& what) {
    if (peek().kind != kind) {
      fail(peek(), "expected " + what + (peek().kind == TokenKind::End ? " before end of input"
                                                                       : ", found '" + peek().text + "'"));
    }
    return next();
  }

  Value expr() {
    Value result;
    bool negate = false;
    if (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      negate = next().kind == TokenKind::Minus;
    }
    add(result, term(), negate);
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      negate = next().kind == TokenKind::Minus;
      add(result, term(), negate);
    }
    return result;
  }

  static void add(Value& into, const Value& v, bool negate) {
    for (const auto& [s, c] : v) accumulate(into, s, negate ? -c : c);
  }

  Value term() {
    Value result = unary();
    while (peek().kind == TokenKind::Star || peek().kind == TokenKind::Slash) {
      const Token& op = next();
      if (op.kind == TokenKind::Star) {
        result = multiply(result, unary(), op);
      } else {
        const Token& at = peek();
        Value divisor = unary();
        if (!is_constant(divisor)) fail(at, "division by an expression containing u is not polynomial");
        RationalFunction d = constant_part(divisor);
        if (d.is_zero()) fail(at, "division by zero");
        Value scaled;
        for (const auto& [s, c] : result) accumulate(scaled, s, c / d);
        result = std::move(scaled);
      }
    }
    return result;
  }

  Value unary() {
    if (peek().kind == TokenKind::Minus) {
      next();
      Value v = unary();
      for (auto& [s, c] : v) c = -c;
      return v;
    }
    return factor();
  }

  static Value multiply(const Value& a, const Value& b, const Token& at) {
    Value result;
    for (const auto& [sa, ca] : a) {
      for (const auto& [sb, cb] : b) {
        bool a_plain = sa.degree() == 0, b_plain = sb.degree() == 0;
        if (!a_plain && !b_plain && (sa.inverse_d_count != 0 || sb.inverse_d_count != 0)) {
          fail(at, "product with a Dinv(...) factor is not a differential polynomial");
        }
        Shape s;
        s.inverse_d_count = sa.inverse_d_count + sb.inverse_d_count;
        s.factors = sa.factors;
        s.factors.insert(s.factors.end(), sb.factors.begin(), sb.factors.end());
        std::sort(s.factors.begin(), s.factors.end());
        accumulate(result, s, ca * cb);
      }
    }
    return result;
  }

  static Value differentiate(const Value& v, int order) {
    Value current = v;
    for (int k = 0; k < order; ++k) {
      Value next;
      for (const auto& [s, c] : current) {
        if (s.inverse_d_count > 0) {
          Shape t = s;
          --t.inverse_d_count;
          accumulate(next, t, c);
          continue;
        }
        // Leibniz rule over the factors.
        for (std::size_t i = 0; i < s.factors.size(); ++i) {
          Shape t = s;
          ++t.factors[i];
          std::sort(t.factors.begin(), t.factors.end());
          accumulate(next, t, c);
        }
      }
      current = std::move(next);
    }
    return current;
  }

  Value parenthesized() {
    expect(TokenKind::LParen, "'('");
    Value v = expr();
    expect(TokenKind::RParen, "')'");
    return v;
  }

  Value factor() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Number:
        next();
        return constant(RationalFunction(algebra::parse_rational(t.text)));
      case TokenKind::LParen:
        return parenthesized();
      case TokenKind::Identifier:
        break;
      default:
        fail(t, t.kind == TokenKind::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
    next();
    const std::string& name = t.text;
    if (name == "u") {
      Value v;
      accumulate(v, Shape{{0}, 0}, RationalFunction(1));
      return v;
    }
    if (name == "u_t") fail(t, "u_t may only appear on the left-hand side");
    if (name.rfind("u_", 0) == 0) fail(t, "unknown symbol '" + name + "'; write derivatives as D1(u), D2(u), ...");
    if (name == "Dinv") {
      Value inner = parenthesized();
      Value result;
      for (const auto& [s, c] : inner) {
        if (s.degree() == 0) fail(t, "Dinv of a constant is not a differential polynomial");
        Shape shifted = s;
        ++shifted.inverse_d_count;
        accumulate(result, shifted, c);
      }
      return result;
    }
    if (name.size() > 1 && name[0] == 'D' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int order = std::stoi(name.substr(1));
      return differentiate(parenthesized(), order);
    }
    try {
      return constant(RationalFunction::variable(Variable::parameter(name)));
    } catch (const MalformedInput&) {
      fail(t, "'" + name + "' is reserved and cannot be used as a parameter");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string render_body(const DiffMonomial& m) {
  std::string body;
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    if (i) body += '*';
    body += m.factors[i] == 0 ? std::string("u") : "D" + std::to_string(m.factors[i]) + "(u)";
  }
  for (int k = 0; k < m.inverse_d_count; ++k) body = "Dinv(" + body + ")";
  return body;
}

bool is_negative(const RationalFunction& c) { return !c.is_zero() && c.numerator().leading_coefficient() < 0; }

std::string render_monomial(const DiffMonomial& m) {
  const RationalFunction& c = m.coefficient;
  std::string body = render_body(m);
  if (c == RationalFunction(1)) return body;
  std::string coeff = c.to_string();
  if (c.numerator().size() > 1) coeff = "(" + coeff + ")";
  return coeff + "*" + body;
}

}  // namespace

std::vector<DiffMonomial> parse(std::string_view text) {
  Value value = Parser(Lexer(text).run()).equation();
  std::vector<DiffMonomial> out;
  for (auto& [shape, coefficient] : value) {
    out.push_back(DiffMonomial{std::move(coefficient), shape.factors, shape.inverse_d_count});
  }
  return out;
}

std::string render(std::span<const DiffMonomial> monomials) {
  std::string out = "u_t = ";
  if (monomials.empty()) return out + "0";
  bool first = true;
  for (const auto& m : monomials) {
    bool negative = is_negative(m.coefficient);
    DiffMonomial shown = m;
    if (negative) shown.coefficient = -m.coefficient;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += render_monomial(shown);
  }
  return out;
}

std::optional<std::string> builtin_equation(std::string_view alias) {
  if (alias == "ostrovsky") return "u_t = Dinv(beta*D4(u) + gamma*u) - 2*u*D1(u)";
  if (alias == "kdv") return "u_t = beta*D3(u) - 2*u*D1(u)";
  return std::nullopt;
}

}  // namespace ostrovsky::equation
