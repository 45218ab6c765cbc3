#pragma once

// Formal sums of operator words in b, b+ (and the second CCR family d, d+,
// written p, pd) at symbolic points, with delta(x-y) factors. Normal
// ordering uses [b(x), b+(y)] = delta(x-y); coincident deltas follow the
// renormalization delta^2 = c delta.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swnlab/wick/coefficient.hpp"

namespace swnlab::wick {

enum class Family { B, P };

struct Letter {
  Family family;
  bool dagger;
  std::string var;

  bool creator() const noexcept { return dagger; }
  std::string name() const {
    const char* base = family == Family::B ? "b" : "p";
    return std::string(base) + (dagger ? "d" : "");
  }
  std::string str() const { return name() + "(" + var + ")"; }

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Delta = std::pair<std::string, std::string>;

/// A formal product: delta factors times a word.
struct Monomial {
  std::vector<Delta> deltas;
  std::vector<Letter> word;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  r.deltas.insert(r.deltas.end(), b.deltas.begin(), b.deltas.end());
  r.word.insert(r.word.end(), b.word.begin(), b.word.end());
  return r;
}

/// Joins coefficient and factors with sign handling shared by all renderers.
inline std::string render_term(const CPoly& c, const std::vector<std::string>& factors, bool first) {
  std::string body;
  for (const auto& f : factors) body += (body.empty() ? "" : " ") + f;
  CPoly mag = c;
  std::string sign;
  if (c.is_negative_monomial()) {
    mag = -c;
    sign = first ? "-" : " - ";
  } else if (!first) {
    sign = " + ";
  }
  std::string coef = mag.str(!body.empty());
  if (!coef.empty() && !body.empty()) coef += " ";
  return sign + coef + body;
}

class Expression {
 public:
  using Map = std::map<Monomial, CPoly>;

  Expression() = default;
  static Expression scalar(const CPoly& c) { return term(Monomial{}, c); }
  static Expression letter(Family f, bool dagger, std::string var) {
    return term(Monomial{{}, {Letter{f, dagger, std::move(var)}}}, CPoly(1));
  }
  static Expression delta(std::string x, std::string y) {
    return term(Monomial{{Delta{std::move(x), std::move(y)}}, {}}, CPoly(1));
  }
  static Expression term(Monomial m, const CPoly& c) {
    Expression e;
    e.add(std::move(m), c);
    return e;
  }

  void add(Monomial m, const CPoly& c) {
    if (c.is_zero()) return;
    auto& slot = terms_[std::move(m)];
    slot += c;
  }

  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_zero(); });
  }

  Expression& operator+=(const Expression& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    prune();
    return *this;
  }
  Expression& operator-=(const Expression& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    prune();
    return *this;
  }
  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator-(const Expression& a) { return Expression() - a; }
  friend Expression operator*(const Expression& a, const Expression& b) {
    Expression r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add(ma * mb, ca * cb);
    r.prune();
    return r;
  }
  friend Expression operator*(const CPoly& s, const Expression& a) { return Expression::scalar(s) * a; }

  friend bool operator==(const Expression& a, const Expression& b) { return a.terms_ == b.terms_; }

  Expression substitute_c(const Rational& c) const {
    Expression r;
    for (const auto& [m, p] : terms_) r.add(m, p.substitute(c));
    r.prune();
    return r;
  }

  /// "2*c delta(x,y) + 4 delta(x,y) bd(x) b(x)"; "0" for the empty sum.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::vector<std::string> factors;
      for (const auto& [x, y] : m.deltas) factors.push_back("delta(" + x + "," + y + ")");
      for (const auto& l : m.word) factors.push_back(l.str());
      out += render_term(c, factors, first);
      first = false;
    }
    return out;
  }

 private:
  void prune() { std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); }); }

  Map terms_;
};

namespace detail {

class UnionFind {
 public:
  const std::string& find(const std::string& x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) it = parent_.emplace(x, x).first;
    if (it->second == x) return it->first;
    const std::string root = find(it->second);
    parent_[x] = root;
    return parent_.find(root)->first;
  }
  void unite(const std::string& a, const std::string& b) {
    const std::string ra = find(a), rb = find(b);
    if (ra == rb) return;
    // lexicographically least representative
    if (ra < rb) parent_[rb] = ra; else parent_[ra] = rb;
  }
  std::vector<std::string> members() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : parent_) out.push_back(k);
    return out;
  }

 private:
  std::map<std::string, std::string> parent_;
};

}  // namespace detail

/// Canonical form of a normal-ordered monomial: delta components collapse to
/// a star on their least variable with one factor c per redundant delta,
/// word labels move to representatives, and the (commuting) creator and
/// annihilator blocks are sorted.
inline std::pair<Monomial, CPoly> canonicalize(const Monomial& m, const CPoly& coef) {
  detail::UnionFind uf;
  for (const auto& [x, y] : m.deltas) uf.unite(x, y);

  std::map<std::string, std::size_t> vertices, edges;
  for (const auto& v : uf.members()) ++vertices[uf.find(v)];
  for (const auto& [x, y] : m.deltas) ++edges[uf.find(x)];

  CPoly out_coef = coef;
  Monomial out;
  for (const auto& [root, k] : vertices) {
    const std::size_t e = edges[root];
    if (k == 1)
      throw std::domain_error("wick: delta(" + root + "-" + root +
                              ") has no companion delta to renormalize against (coincident labels)");
    const std::size_t extra = e - (k - 1);
    if (extra > 0) out_coef = out_coef * CPoly::c_power(static_cast<unsigned>(extra));
  }
  for (const auto& v : uf.members()) {
    const std::string& r = uf.find(v);
    if (r != v) out.deltas.emplace_back(r, v);
  }
  std::sort(out.deltas.begin(), out.deltas.end());

  out.word = m.word;
  for (auto& l : out.word) {
    if (!m.deltas.empty()) l.var = uf.find(l.var);
  }
  auto split = std::partition_point(out.word.begin(), out.word.end(), [](const Letter& l) { return l.creator(); });
  if (std::any_of(split, out.word.end(), [](const Letter& l) { return l.creator(); }))
    throw std::logic_error("canonicalize: word is not normal-ordered");
  std::sort(out.word.begin(), split);
  std::sort(split, out.word.end());
  return {std::move(out), std::move(out_coef)};
}

/// Moves every annihilator to the right of every creator using the CCR,
/// then canonicalizes. Idempotent and linear.
inline Expression normal_order(const Expression& e) {
  Expression result;
  std::deque<std::pair<Monomial, CPoly>> work(e.terms().begin(), e.terms().end());
  while (!work.empty()) {
    auto [m, c] = std::move(work.front());
    work.pop_front();
    std::size_t i = 0;
    while (i + 1 < m.word.size() && !(!m.word[i].creator() && m.word[i + 1].creator())) ++i;
    if (i + 1 >= m.word.size()) {
      auto [cm, cc] = canonicalize(m, c);
      result.add(std::move(cm), cc);
      continue;
    }
    const Letter ann = m.word[i], cre = m.word[i + 1];
    if (ann.family == cre.family) {
      Monomial contracted = m;
      contracted.word.erase(contracted.word.begin() + static_cast<std::ptrdiff_t>(i),
                            contracted.word.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      contracted.deltas.emplace_back(ann.var, cre.var);
      work.emplace_back(std::move(contracted), c);
    }
    std::swap(m.word[i], m.word[i + 1]);
    work.emplace_back(std::move(m), std::move(c));
  }
  return result += Expression();  // drops cancelled terms
}

inline Expression commutator(const Expression& a, const Expression& b) { return normal_order(a * b - b * a); }

namespace detail {
inline std::string word_name(const std::vector<Letter>& word) {
  const bool all_b = std::all_of(word.begin(), word.end(), [](const Letter& l) { return l.family == Family::B; });
  if (all_b && word.size() == 2) {
    if (word[0].dagger && word[1].dagger) return "Bd";
    if (!word[0].dagger && !word[1].dagger) return "B";
    if (word[0].dagger && !word[1].dagger) return "N";
  }
  if (word.size() == 1) return word[0].name();
  std::string s = "{";
  for (std::size_t i = 0; i < word.size(); ++i) s += (i ? " " : "") + word[i].name();
  return s + "}";
}
}  // namespace detail

/// Reading of a canonical pointwise expression in x, y after smearing with
/// phi(x) psi(y) and integrating: a term delta(x,y) W at the merged point
/// becomes W(phi*psi) (or <phi,psi> for the empty word); a delta-free term
/// W_x W_y becomes W_x(phi) W_y(psi). Returns nothing when some term has
/// another delta structure.
inline std::optional<std::string> smeared_reading(const Expression& e, const std::string& x, const std::string& y,
                                                  const std::string& phi = "phi", const std::string& psi = "psi") {
  if (e.terms().empty()) return std::string("0");
  const std::string rep = std::min(x, y);
  std::string out;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    std::vector<std::string> factors;
    if (m.deltas.size() == 1 && m.deltas[0] == Delta{rep, std::max(x, y)}) {
      if (!std::all_of(m.word.begin(), m.word.end(), [&](const Letter& l) { return l.var == rep; })) return std::nullopt;
      factors.push_back(m.word.empty() ? "<" + phi + "," + psi + ">" : detail::word_name(m.word) + "(" + phi + "*" + psi + ")");
    } else if (m.deltas.empty()) {
      std::vector<Letter> at_x, at_y;
      for (const auto& l : m.word) {
        if (l.var == x) at_x.push_back(l);
        else if (l.var == y) at_y.push_back(l);
        else return std::nullopt;
      }
      if (!at_x.empty()) factors.push_back(detail::word_name(at_x) + "(" + phi + ")");
      if (!at_y.empty()) factors.push_back(detail::word_name(at_y) + "(" + psi + ")");
    } else {
      return std::nullopt;
    }
    out += render_term(c, factors, first);
    first = false;
  }
  return out;
}

}  // namespace swnlab::wick
