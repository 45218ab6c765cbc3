#pragma once

// Text syntax for Wick expressions.
//
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := power { ['*'] power }          juxtaposition multiplies
//   power   := primary [ '^' INT ]
//   primary := INT [ '/' INT ] | 'c' | '(' expr ')' | '[' expr ',' expr ']'
//            | NAME '(' VAR [ ',' VAR ] ')'
//
// NAME is one of b, bd, p, pd (one variable), B, Bd, N (shorthand for
// b b, bd bd, bd b at one point) or delta (two variables). Brackets denote
// the commutator. Whitespace is insignificant.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swnlab/wick/expression.hpp"

namespace swnlab::wick {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::string expected, std::string found)
      : std::runtime_error("parse error at column " + std::to_string(position + 1) + ": expected " + expected +
                           ", found " + found),
        position_(position),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression parse() {
    Expression e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("operator or end of input");
    return e;
  }

 private:
  Expression expr() {
    skip_ws();
    bool negate = false;
    if (accept('+')) {
    } else if (accept('-')) {
      negate = true;
    }
    Expression acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Expression term() {
    Expression acc = power();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        acc = acc * power();
      } else if (starts_primary()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Expression power() {
    Expression base = primary();
    skip_ws();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t at = pos_;
    const std::int64_t k = integer();
    if (k < 0 || k > 64) throw ParseError(at, "exponent in 0..64", std::to_string(k));
    Expression r = Expression::scalar(CPoly(1));
    for (std::int64_t i = 0; i < k; ++i) r = r * base;
    return r;
  }

  Expression primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("number, c, name, '(' or '['");
    const char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::int64_t num = integer();
      skip_ws();
      if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        const std::int64_t den = integer();
        if (den == 0) throw ParseError(at, "nonzero denominator", "0");
        return Expression::scalar(CPoly(Rational(num, den)));
      }
      return Expression::scalar(CPoly(num));
    }
    if (accept('(')) {
      Expression inner = expr();
      expect(')');
      return inner;
    }
    if (accept('[')) {
      Expression a = expr();
      expect(',');
      Expression b = expr();
      expect(']');
      return commutator_unordered(a, b);
    }
    const std::size_t at = pos_;
    const std::string name = identifier("number, c, name, '(' or '['");
    if (name == "c") return Expression::scalar(CPoly::c_power(1));
    if (name == "delta") {
      expect('(');
      std::string x = variable();
      expect(',');
      std::string y = variable();
      expect(')');
      return Expression::delta(std::move(x), std::move(y));
    }
    struct Spelling {
      const char* name;
      std::vector<std::pair<Family, bool>> letters;
    };
    static const std::vector<Spelling> table = {
        {"b", {{Family::B, false}}},
        {"bd", {{Family::B, true}}},
        {"p", {{Family::P, false}}},
        {"pd", {{Family::P, true}}},
        {"B", {{Family::B, false}, {Family::B, false}}},
        {"Bd", {{Family::B, true}, {Family::B, true}}},
        {"N", {{Family::B, true}, {Family::B, false}}},
    };
    for (const auto& s : table) {
      if (name != s.name) continue;
      expect('(');
      const std::string x = variable();
      expect(')');
      Expression r = Expression::scalar(CPoly(1));
      for (const auto& [f, d] : s.letters) r = r * Expression::letter(f, d, x);
      return r;
    }
    throw ParseError(at, "one of b, bd, p, pd, B, Bd, N, delta, c", "'" + name + "'");
  }

  // The commutator bracket is kept unordered here; callers normal-order.
  static Expression commutator_unordered(const Expression& a, const Expression& b) { return a * b - b * a; }

  std::string variable() {
    skip_ws();
    const std::size_t at = pos_;
    std::string v = identifier("variable name");
    if (v == "c") throw ParseError(at, "variable name other than the constant c", "'c'");
    return v;
  }

  std::string identifier(const char* what) {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return std::string(text_.substr(start, pos_ - start));
    }
    fail(what);
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const int digit = text_[pos_] - '0';
      if (v > (std::numeric_limits<std::int64_t>::max() - digit) / 10) throw ParseError(start, "smaller integer", "overflow");
      v = v * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail("integer");
    return v;
  }

  bool starts_primary() const {
    if (pos_ >= text_.size()) return false;
    const auto ch = static_cast<unsigned char>(text_[pos_]);
    return std::isalnum(ch) || ch == '_' || ch == '(' || ch == '[';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char ch) {
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    skip_ws();
    if (!accept(ch)) fail(std::string("'") + ch + "'");
  }
  [[noreturn]] void fail(const std::string& expected) const {
    const std::string found = pos_ >= text_.size() ? "end of input" : "'" + std::string(1, text_[pos_]) + "'";
    throw ParseError(pos_, expected, found);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parsed, not yet normal-ordered expression.
inline Expression parse(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace swnlab::wick
