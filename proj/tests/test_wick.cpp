#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "swnlab/wick/corpus.hpp"

using namespace swnlab::wick;

namespace {

Expression nf(const std::string& s) { return normal_order(parse(s)); }

// Oracle: every variable sits on one oscillator per family, so delta = 1 and
// (delta^2 = c delta) forces c = 1. Words act on number states exactly.
using State = std::map<std::pair<int, int>, double>;

State apply_word(const std::vector<Letter>& word, const State& in) {
  State s = in;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    State next;
    for (const auto& [occ, amp] : s) {
      auto [nb, np] = occ;
      int& n = it->family == Family::B ? nb : np;
      if (it->dagger) {
        const double f = std::sqrt(static_cast<double>(n + 1));
        ++n;
        next[{nb, np}] += f * amp;
      } else {
        if (n == 0) continue;
        const double f = std::sqrt(static_cast<double>(n));
        --n;
        next[{nb, np}] += f * amp;
      }
    }
    s = std::move(next);
  }
  return s;
}

double to_double(const CPoly& p) {
  const auto r = p.substitute(swnlab::wick::kOne);
  if (r.terms().empty()) return 0.0;
  const Rational q = r.terms().begin()->second;
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

State apply_expression(const Expression& e, const State& in) {
  State out;
  for (const auto& [m, c] : e.terms()) {
    const double k = to_double(c);
    for (const auto& [occ, amp] : apply_word(m.word, in)) out[occ] += k * amp;
  }
  return out;
}

void expect_same_action(const Expression& a, const Expression& b) {
  for (int nb = 0; nb <= 3; ++nb)
    for (int np = 0; np <= 3; ++np) {
      const State in{{{nb, np}, 1.0}};
      auto sa = apply_expression(a, in), sb = apply_expression(b, in);
      for (const auto& [occ, amp] : sa) EXPECT_NEAR(amp, sb[occ], 1e-9) << nb << "," << np;
      for (const auto& [occ, amp] : sb) EXPECT_NEAR(amp, sa[occ], 1e-9) << nb << "," << np;
    }
}

}  // namespace

TEST(WickParser, ScalarsAndLetters) {
  EXPECT_EQ(parse("2/4"), Expression::scalar(CPoly(Rational(1, 2))));
  EXPECT_EQ(parse("c"), Expression::scalar(CPoly::c_power(1)));
  EXPECT_EQ(parse("bd(x)"), Expression::letter(Family::B, true, "x"));
  EXPECT_EQ(parse("N(x)"), Expression::letter(Family::B, true, "x") * Expression::letter(Family::B, false, "x"));
  EXPECT_EQ(parse("p(x)^2"), parse("p(x) p(x)"));
  EXPECT_EQ(parse("p(x)^0"), parse("1"));
  EXPECT_EQ(parse("-b(x) + 3*b(x)"), parse("2 b(x)"));
  EXPECT_EQ(parse("[b(x), bd(y)]"), parse("b(x) bd(y) - bd(y) b(x)"));
}

TEST(WickParser, ErrorsCarryColumn) {
  try {
    parse("b(x) + foo(y)");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
    EXPECT_EQ(e.found(), "'foo'");
    EXPECT_NE(std::string(e.what()).find("column 8"), std::string::npos);
  }
  try {
    parse("b(x");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
    EXPECT_EQ(e.found(), "end of input");
  }
  EXPECT_THROW(parse("b(c)"), ParseError);
  EXPECT_THROW(parse("1/0"), ParseError);
  EXPECT_THROW(parse("b(x)^65"), ParseError);
  EXPECT_THROW(parse("b(x) )"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(WickNormalOrder, CcrContraction) {
  EXPECT_EQ(nf("b(x) bd(y)"), nf("bd(y) b(x) + delta(x,y)"));
  EXPECT_EQ(nf("b(x) bd(y)").str(), "bd(y) b(x) + delta(x,y)");
  EXPECT_EQ(nf("p(x) bd(y)"), nf("bd(y) p(x)"));
  EXPECT_TRUE(commutator(parse("b(x)"), parse("b(y)")).is_zero());
}

TEST(WickNormalOrder, DeltaRenormalization) {
  EXPECT_EQ(nf("delta(x,y) delta(x,y)").str(), "c delta(x,y)");
  EXPECT_EQ(nf("delta(x,y) delta(y,z)").str(), "delta(x,y) delta(x,z)");
  EXPECT_EQ(nf("delta(x,y) delta(y,z) delta(z,x)").str(), "c delta(x,y) delta(x,z)");
  EXPECT_EQ(nf("delta(y,x) b(y)").str(), "delta(x,y) b(x)");
}

TEST(WickNormalOrder, CoincidentSelfContractionThrows) {
  EXPECT_THROW(nf("b(x) bd(x)"), std::domain_error);
  EXPECT_THROW(nf("delta(x,x)"), std::domain_error);
}

TEST(WickNormalOrder, SquareCommutatorCanonicalForm) {
  EXPECT_EQ(commutator(parse("B(x)"), parse("Bd(y)")).str(), "2*c delta(x,y) + 4 delta(x,y) bd(x) b(x)");
}

TEST(WickNormalOrder, IdempotentAndLinear) {
  const std::vector<std::string> samples{"b(x) bd(y) b(z) bd(w)", "B(x) Bd(y)", "p(x) pd(y)^2 p(z)",
                                         "N(x) B(y) Bd(z)", "b(x) p(y) bd(z) pd(w)"};
  for (const auto& s : samples) {
    const auto once = nf(s);
    EXPECT_EQ(normal_order(once), once) << s;
  }
  for (const auto& a : samples)
    for (const auto& b : samples) {
      const auto sum = normal_order(parse(a) + Expression::scalar(CPoly(3)) * parse(b));
      EXPECT_EQ(sum, nf(a) + Expression::scalar(CPoly(3)) * nf(b)) << a << " | " << b;
    }
}

TEST(WickNormalOrder, ConfluentOverFactorization) {
  const std::vector<std::string> left{"b(x) bd(y)", "B(x)", "N(x) b(z)"};
  const std::vector<std::string> right{"Bd(y) b(w)", "bd(u) bd(w)", "N(y)"};
  for (const auto& a : left)
    for (const auto& b : right)
      EXPECT_EQ(normal_order(nf(a) * nf(b)), normal_order(parse(a) * parse(b))) << a << " * " << b;
}

TEST(WickNormalOrder, AgreesWithSingleOscillatorOracle) {
  const std::vector<std::string> samples{"b(x) bd(y)", "b(x) b(y) bd(z) bd(w)", "p(x) pd(y) p(z) pd(w)",
                                         "b(x) p(y) bd(z) pd(w)", "b(x) bd(y) b(z) bd(w) b(u) bd(v)",
                                         "p(x) p(y) pd(z) pd(w) pd(u)"};
  for (const auto& s : samples) {
    SCOPED_TRACE(s);
    expect_same_action(parse(s), nf(s));
  }
}

TEST(WickNormalOrder, JacobiIdentity) {
  const auto A = parse("B(x)"), Bd = parse("Bd(y)"), C = parse("N(z)");
  const auto j = commutator(A, commutator(Bd, C)) + commutator(Bd, commutator(C, A)) +
                 commutator(C, commutator(A, Bd));
  EXPECT_TRUE(normal_order(j).is_zero()) << j.str();
}

TEST(WickCoefficient, SubstituteAndRender) {
  const CPoly p = CPoly(3) + CPoly::c_power(2, Rational(-1, 2));
  EXPECT_EQ(p.substitute(Rational(2)).terms().begin()->second, Rational(1));
  EXPECT_EQ(nf("c^2 delta(x,y) delta(x,y)").substitute_c(Rational(2)).str(), "8 delta(x,y)");
  EXPECT_EQ(Expression().str(), "0");
  EXPECT_EQ(nf("-b(x)").str(), "-b(x)");
}

TEST(WickSmeared, ReadingsOfTheSwnRelations) {
  const auto bbd = commutator(parse("B(x)"), parse("Bd(y)"));
  EXPECT_EQ(smeared_reading(bbd, "x", "y").value(), "2*c <phi,psi> + 4 N(phi*psi)");
  EXPECT_EQ(smeared_reading(commutator(parse("N(x)"), parse("Bd(y)")), "x", "y").value(), "2 Bd(phi*psi)");
  EXPECT_EQ(smeared_reading(nf("bd(x) b(y)"), "x", "y").value(), "bd(phi) b(psi)");
  EXPECT_FALSE(smeared_reading(nf("delta(x,y) delta(y,z)"), "x", "y").has_value());
  EXPECT_EQ(smeared_reading(Expression(), "x", "y").value(), "0");
}

TEST(WickVerify, PassFailAndOptions) {
  EXPECT_TRUE(verify_identity("[b(x), bd(y)]", "delta(x,y)").pass);
  const auto bad = verify_identity("[b(x), bd(y)]", "2 delta(x,y)");
  EXPECT_FALSE(bad.pass);
  EXPECT_EQ(bad.diff, "-delta(x,y)");
  VerifyOptions at2;
  at2.c = Rational(2);
  EXPECT_TRUE(verify_identity("delta(x,y) delta(x,y)", "2 delta(x,y)", at2).pass);
  VerifyOptions strict = at2;
  strict.ccr_only = true;
  EXPECT_FALSE(verify_identity("delta(x,y) delta(x,y)", "2 delta(x,y)", strict).pass);
  VerifyOptions sm;
  sm.smeared = "2 Bd(phi*psi)";
  EXPECT_TRUE(verify_identity("[N(x), Bd(y)]", "2 delta(x,y) Bd(y)", sm).pass);
  sm.smeared = "3 Bd(phi*psi)";
  EXPECT_FALSE(verify_identity("[N(x), Bd(y)]", "2 delta(x,y) Bd(y)", sm).pass);
}

TEST(WickCorpus, BuiltinCorpusPasses) {
  const auto corpus = builtin_corpus();
  EXPECT_EQ(corpus.size(), 16u);
  for (const auto& e : corpus) {
    const auto r = verify_identity(e.lhs, e.rhs, e.options);
    EXPECT_TRUE(r.pass) << e.name << ": " << r.failure << " diff " << r.diff;
  }
}

TEST(WickCorpus, ParsesOptionsAndRejectsMalformedLines) {
  const auto c = parse_corpus("# comment\n\nrn: delta(x,y)^2 = c delta(x,y) ; c=1/2 ; ccr-only\n", "t");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].name, "rn");
  EXPECT_EQ(c[0].line, 3u);
  EXPECT_EQ(*c[0].options.c, Rational(1, 2));
  EXPECT_TRUE(c[0].options.ccr_only);
  EXPECT_THROW(parse_corpus("no colon here\n"), CorpusError);
  EXPECT_THROW(parse_corpus("x: b(x)\n"), CorpusError);
  EXPECT_THROW(parse_corpus("x: b(x) = b(x) ; frobnicate\n"), CorpusError);
  EXPECT_THROW(parse_corpus("x: b(x) = b(x) ; c=b(y)\n"), CorpusError);
  try {
    parse_corpus("ok: 1 = 1\nbad\n", "file.txt");
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("file.txt:2"), std::string::npos);
  }
  EXPECT_THROW(load_corpus("/nonexistent/path.corpus"), CorpusError);
}
