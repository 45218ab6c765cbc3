#pragma once

// Coefficients of Wick terms: polynomials in the renormalization constant c
// with exact rational coefficients.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include <boost/rational.hpp>

namespace swnlab::wick {

using Rational = boost::rational<std::int64_t>;

// Comparisons go through Rational on both sides: the mixed rational/int
// operators of older Boost recurse forever under C++20 operator rewriting.
inline const Rational kZero{0};
inline const Rational kOne{1};

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

class CPoly {
 public:
  CPoly() = default;
  CPoly(Rational constant) {  // NOLINT: implicit by intent, scalars promote
    if (constant != kZero) terms_[0] = constant;
  }
  CPoly(std::int64_t constant) : CPoly(Rational(constant)) {}  // NOLINT

  static CPoly c_power(unsigned k, Rational coef = 1) {
    CPoly p;
    if (coef != kZero) p.terms_[k] = coef;
    return p;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<unsigned, Rational>& terms() const noexcept { return terms_; }

  CPoly& operator+=(const CPoly& o) {
    for (const auto& [k, r] : o.terms_) accumulate(k, r);
    return *this;
  }
  CPoly& operator-=(const CPoly& o) {
    for (const auto& [k, r] : o.terms_) accumulate(k, -r);
    return *this;
  }
  friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
  friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
  friend CPoly operator-(const CPoly& a) { return CPoly() - a; }
  friend CPoly operator*(const CPoly& a, const CPoly& b) {
    CPoly r;
    for (const auto& [i, x] : a.terms_)
      for (const auto& [j, y] : b.terms_) r.accumulate(i + j, x * y);
    return r;
  }
  friend bool operator==(const CPoly&, const CPoly&) = default;

  /// Value with c replaced by a number.
  CPoly substitute(const Rational& c) const {
    Rational sum = 0;
    for (const auto& [k, r] : terms_) {
      Rational pw = 1;
      for (unsigned i = 0; i < k; ++i) pw *= c;
      sum += r * pw;
    }
    return CPoly(sum);
  }

  /// Single monomial r * c^k with r < 0.
  bool is_negative_monomial() const { return terms_.size() == 1 && terms_.begin()->second < kZero; }

  /// "2*c", "-1/2*c^2", "(c + 2)"; `unit_empty` renders a bare 1 as "".
  std::string str(bool unit_empty = false) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto [k, r] = *it;
      Rational mag = r;
      if (!first) {
        out += r < kZero ? " - " : " + ";
        if (r < kZero) mag = -r;
      }
      out += monomial(k, mag, terms_.size() == 1 && unit_empty);
      first = false;
    }
    return terms_.size() > 1 ? "(" + out + ")" : out;
  }

 private:
  static std::string monomial(unsigned k, const Rational& r, bool unit_empty) {
    const std::string cpart = k == 0 ? "" : (k == 1 ? "c" : "c^" + std::to_string(k));
    if (cpart.empty()) {
      if (unit_empty && r == kOne) return "";
      if (unit_empty && r == -kOne) return "-";
      return to_string(r);
    }
    if (r == kOne) return cpart;
    if (r == -kOne) return "-" + cpart;
    return to_string(r) + "*" + cpart;
  }

  void accumulate(unsigned k, const Rational& r) {
    auto& slot = terms_[k];
    slot += r;
    if (slot == kZero) terms_.erase(k);
  }

  std::map<unsigned, Rational> terms_;
};

}  // namespace swnlab::wick
