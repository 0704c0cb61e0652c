#pragma once

// Recursive-descent parser for scalar expressions:
//   expr := term (('+'|'-') term)*
//   term := factor (('*'|'/') factor)*
//   factor := ('-')? atom ('^' uint)?
//   atom := rational | ident | '(' expr ')'
//   rational := int ('/' uint)?

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nilkaehler/scalar.hpp"

namespace nilkaehler {

class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

namespace detail {

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Scalar parse() {
    Scalar value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_digit() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string digits() {
    skip_space();
    if (!peek_digit()) fail("expected digits");
    std::size_t start = pos_;
    while (peek_digit()) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Scalar expr() {
    Scalar value = term();
    while (true) {
      if (accept('+')) value += term();
      else if (accept('-')) value -= term();
      else return value;
    }
  }

  Scalar term() {
    Scalar value = factor();
    while (true) {
      if (accept('*')) {
        value *= factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Scalar d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        value /= d;
      } else {
        return value;
      }
    }
  }

  Scalar factor() {
    bool negate = accept('-');
    Scalar value = atom();
    if (accept('^')) {
      std::string e = digits();
      if (e.size() > 9) fail("exponent too large");
      value = value.pow(std::stoi(e));
    }
    return negate ? -value : value;
  }

  Scalar atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar value = expr();
      if (!accept(')')) fail("expected ')'");
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(digits());
      // rational := int '/' uint binds tighter than term-level division.
      std::size_t save = pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_space();
        if (peek_digit()) {
          std::size_t at = pos_;
          Integer den(digits());
          if (den == 0) throw ParseError("division by zero", at);
          return Scalar(Rational(num, den));
        }
      }
      pos_ = save;
      return Scalar(Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return Scalar::variable(std::string(text_.substr(start, pos_ - start)));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }
};

}  // namespace detail

inline Scalar parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Parses "name=value" with an exact rational value.
inline std::pair<std::string, Rational> parse_binding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ParseError("expected name=value", 0);
  std::string name = text.substr(0, eq);
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') throw ParseError("bad parameter name", 0);
  Scalar value = parse_expr(std::string_view(text).substr(eq + 1));
  if (!value.is_constant()) throw ParseError("binding value must be a rational number", eq + 1);
  return {name, value.constant_value()};
}

}  // namespace nilkaehler
