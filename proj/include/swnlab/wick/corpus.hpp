#pragma once

// Identity checking and the identity corpus.
//
// Corpus files hold one identity per line:
//
//   name: <lhs> = <rhs> [; c=<rational>] [; ccr-only] [; smeared=<reading>]
//
// Blank lines and lines starting with '#' are ignored. `c=` substitutes a
// value for the renormalization constant on both sides, `ccr-only` demands
// that the left side normal-orders without using delta^2 = c delta, and
// `smeared=` compares the smeared reading of the left side (test functions
// phi, psi attached to the first and second variable in order of
// appearance) up to whitespace.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swnlab/wick/expression.hpp"
#include "swnlab/wick/parser.hpp"

namespace swnlab::wick {

struct VerifyOptions {
  std::optional<Rational> c;  // unset keeps c symbolic
  bool ccr_only = false;
  std::optional<std::string> smeared;
};

struct VerifyResult {
  bool pass = false;
  std::string lhs;   // canonical form
  std::string rhs;   // canonical form
  std::string diff;  // canonical lhs - rhs, "0" on success
  std::optional<std::string> smeared;  // reading of the lhs, when requested
  std::string failure;                 // human-readable reason, empty on success
};

namespace detail {

inline std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Variable labels in order of first appearance inside call parentheses.
inline std::vector<std::string> variables_in_order(std::string_view text) {
  std::vector<std::string> out;
  int depth_call = 0;
  std::size_t i = 0;
  std::string prev_ident;
  while (i < text.size()) {
    const auto ch = static_cast<unsigned char>(text[i]);
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string ident(text.substr(i, j - i));
      if (depth_call > 0 && std::find(out.begin(), out.end(), ident) == out.end()) out.push_back(ident);
      prev_ident = ident;
      i = j;
      continue;
    }
    if (ch == '(' && !prev_ident.empty() && prev_ident != "c") ++depth_call;
    else if (ch == ')' && depth_call > 0) --depth_call;
    if (!std::isspace(ch)) prev_ident.clear();
    ++i;
  }
  return out;
}

inline bool mentions_c(const Expression& e) {
  return std::any_of(e.terms().begin(), e.terms().end(), [](const auto& kv) {
    return std::any_of(kv.second.terms().begin(), kv.second.terms().end(), [](const auto& t) { return t.first > 0; });
  });
}

inline Rational parse_rational(const std::string& text) {
  const Expression e = parse(text);
  if (e.terms().empty()) return 0;
  if (e.terms().size() != 1 || !e.terms().begin()->first.word.empty() || !e.terms().begin()->first.deltas.empty())
    throw ParseError(0, "rational number", "'" + text + "'");
  const CPoly& p = e.terms().begin()->second;
  if (p.terms().size() != 1 || p.terms().begin()->first != 0) throw ParseError(0, "rational number", "'" + text + "'");
  return p.terms().begin()->second;
}

}  // namespace detail

/// Normal-orders both sides and compares canonical forms exactly.
inline VerifyResult verify_identity(std::string_view lhs_text, std::string_view rhs_text,
                                    const VerifyOptions& options = {}) {
  VerifyResult r;
  Expression lhs = normal_order(parse(lhs_text));
  Expression rhs = normal_order(parse(rhs_text));
  const bool lhs_renormalized = detail::mentions_c(lhs) && !detail::mentions_c(parse(lhs_text));
  if (options.c) {
    lhs = lhs.substitute_c(*options.c);
    rhs = rhs.substitute_c(*options.c);
  }
  r.lhs = lhs.str();
  r.rhs = rhs.str();
  r.diff = (lhs - rhs).str();
  r.pass = lhs == rhs;
  if (!r.pass) r.failure = "canonical forms differ";
  if (options.ccr_only && lhs_renormalized) {
    r.pass = false;
    r.failure = "left side needed delta^2 = c delta";
  }
  if (options.smeared) {
    const auto vars = detail::variables_in_order(lhs_text);
    if (vars.size() != 2) {
      r.pass = false;
      r.failure = "smeared reading needs exactly two variables";
    } else {
      r.smeared = smeared_reading(lhs, vars[0], vars[1]);
      if (!r.smeared) {
        r.pass = false;
        r.failure = "left side has no smeared reading";
      } else if (detail::strip_spaces(*r.smeared) != detail::strip_spaces(*options.smeared)) {
        r.pass = false;
        r.failure = "smeared reading differs: got '" + *r.smeared + "'";
      }
    }
  }
  return r;
}

struct CorpusEntry {
  std::string name;
  std::string lhs;
  std::string rhs;
  VerifyOptions options;
  std::size_t line = 0;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<CorpusEntry> parse_corpus(std::string_view text, const std::string& source = "corpus") {
  std::vector<CorpusEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw CorpusError(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto colon = t.find(':');
    if (colon == std::string::npos) fail("expected 'name: lhs = rhs'");
    CorpusEntry e;
    e.line = lineno;
    e.name = detail::trim(t.substr(0, colon));
    if (e.name.empty()) fail("empty identity name");
    std::vector<std::string> parts;
    std::stringstream rest(t.substr(colon + 1));
    std::string part;
    while (std::getline(rest, part, ';')) parts.push_back(detail::trim(part));
    if (parts.empty()) fail("missing identity");
    const auto eq = parts[0].find('=');
    if (eq == std::string::npos) fail("expected '=' between the two sides");
    e.lhs = detail::trim(parts[0].substr(0, eq));
    e.rhs = detail::trim(parts[0].substr(eq + 1));
    if (e.lhs.empty() || e.rhs.empty()) fail("empty side in identity");
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const std::string& opt = parts[i];
      if (opt == "ccr-only") {
        e.options.ccr_only = true;
      } else if (opt.rfind("c=", 0) == 0) {
        try {
          e.options.c = detail::parse_rational(opt.substr(2));
        } catch (const ParseError& err) {
          fail(std::string("bad c value: ") + err.what());
        }
      } else if (opt.rfind("smeared=", 0) == 0) {
        e.options.smeared = opt.substr(8);
      } else {
        fail("unknown option '" + opt + "'");
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), path);
}

/// Pointwise SWN relations from the squares of b, their smeared forms, the
/// substitution B = 2(p + pd p^2), N = 2 pd p, B+ = 2 pd over a plain CCR
/// pair with c = 2, and CCR sanity checks.
inline constexpr std::string_view kBuiltinCorpus = R"(# SWN relations with symbolic c
B-Bd: [B(x), Bd(y)] = 2 c delta(x,y) + 4 delta(x,y) N(y) ; smeared=2*c <phi,psi> + 4 N(phi*psi)
N-Bd: [N(x), Bd(y)] = 2 delta(x,y) Bd(y) ; smeared=2 Bd(phi*psi)
N-B: [N(x), B(y)] = -2 delta(x,y) B(y) ; smeared=-2 B(phi*psi)
N-N: [N(x), N(y)] = 0 ; smeared=0
B-B: [B(x), B(y)] = 0 ; smeared=0
Bd-Bd: [Bd(x), Bd(y)] = 0 ; smeared=0

# the same relations from B = 2(p + pd p^2), N = 2 pd p, B+ = 2 pd at c = 2
p-B-Bd: [2 (p(x) + pd(x) p(x)^2), 2 pd(y)] = 2 c delta(x,y) + 4 delta(x,y) 2 pd(y) p(y) ; c=2 ; ccr-only
p-N-Bd: [2 pd(x) p(x), 2 pd(y)] = 2 delta(x,y) 2 pd(y) ; c=2 ; ccr-only
p-N-B: [2 pd(x) p(x), 2 (p(y) + pd(y) p(y)^2)] = -2 delta(x,y) 2 (p(y) + pd(y) p(y)^2) ; c=2 ; ccr-only
p-N-N: [2 pd(x) p(x), 2 pd(y) p(y)] = 0 ; c=2 ; ccr-only
p-B-B: [2 (p(x) + pd(x) p(x)^2), 2 (p(y) + pd(y) p(y)^2)] = 0 ; c=2 ; ccr-only
p-Bd-Bd: [2 pd(x), 2 pd(y)] = 0 ; c=2 ; ccr-only

# CCR and renormalization
ccr: [b(x), bd(y)] = delta(x,y)
ccr-swap: b(x) bd(y) = bd(y) b(x) + delta(x,y)
families-commute: [p(x), bd(y)] = 0
renorm: delta(x,y) delta(x,y) = c delta(x,y)
)";

inline std::vector<CorpusEntry> builtin_corpus() { return parse_corpus(kBuiltinCorpus, "builtin"); }

}  // namespace swnlab::wick
