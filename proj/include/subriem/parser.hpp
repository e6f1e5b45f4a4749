#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "subriem/errors.hpp"
#include "subriem/poly.hpp"
#include "subriem/rational.hpp"

namespace subriem {

namespace detail {

// expr    := term (('+' | '-') term)*
// term    := unary ('*' unary)*
// unary   := '-' unary | power
// power   := primary ('^' integer)?
// primary := integer ('/' integer)? | 'y' integer | '(' expr ')'
class ExprParser {
public:
  ExprParser(std::string_view src, std::size_t dim) : src_(src), dim_(dim) {}

  Poly parse() {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "expression");
    Poly p = expr();
    skip_ws();
    if (!at_end()) throw SyntaxError(pos_, "operator or end of input");
    return p;
  }

private:
  Poly expr() {
    Poly acc = term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc += term();
      } else if (peek() == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      skip_ws();
      if (peek() != '*') return acc;
      ++pos_;
      acc *= unary();
    }
  }

  Poly unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    return power();
  }

  Poly power() {
    Poly base = primary();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    if (peek() == '-') throw NegativeExponent(pos_);
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError(pos_, "nonnegative integer exponent");
    const std::size_t at = pos_;
    const std::string digits = read_digits();
    unsigned long k = 0;
    try {
      k = std::stoul(digits);
    } catch (const std::exception &) {
      throw SyntaxError(at, "exponent that fits in an unsigned integer");
    }
    return base.pow(static_cast<unsigned>(k));
  }

  Poly primary() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      skip_ws();
      if (peek() != ')') throw SyntaxError(pos_, "')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    throw SyntaxError(pos_, "number, variable or '('");
  }

  Poly number() {
    std::string text = read_digits();
    const std::size_t save = pos_;
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError(pos_, "integer denominator");
      const std::size_t at = pos_;
      std::string den = read_digits();
      if (den.find_first_not_of('0') == std::string::npos) throw SyntaxError(at, "nonzero denominator");
      text += "/" + den;
    } else {
      pos_ = save;
    }
    return Poly::constant(dim_, Rational::parse(text));
  }

  Poly variable() {
    const std::size_t at = pos_;
    std::string name;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) name += src_[pos_++];
    if (name.size() < 2 || name[0] != 'y' || name.find_first_not_of("0123456789", 1) != std::string::npos ||
        (name.size() > 2 && name[1] == '0'))
      throw UnknownVariable(at, name);
    std::size_t index = 0;
    try {
      index = std::stoul(name.substr(1));
    } catch (const std::exception &) {
      throw UnknownVariable(at, name);
    }
    if (index >= dim_) throw UnknownVariable(at, name);
    return Poly::variable(dim_, index);
  }

  std::string read_digits() {
    std::string d;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) d += src_[pos_++];
    return d;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  std::string_view src_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a polynomial over y0..y(dim-1), e.g. "1/2*y0^2 - y1*y3".
inline Poly parse_expr(std::string_view text, std::size_t dim) { return detail::ExprParser(text, dim).parse(); }

/// Inverse of parse_expr up to term order.
inline std::string print_expr(const Poly &p) { return p.to_string(); }

} // namespace subriem
