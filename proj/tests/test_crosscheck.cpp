#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "swnlab/crosscheck.hpp"
#include "swnlab/distributions.hpp"

using namespace swnlab;

namespace {

CheckSettings small_settings() {
  CheckSettings s;
  s.betas = {0.0, 2.0, 3.0};
  s.seeds = {1, 2};
  s.commutator_atoms = {2};
  s.kmax = 6;
  s.workers = 2;
  return s;
}

std::size_t count_suite(const std::vector<CheckReport>& rs, const std::string& suite) {
  std::size_t n = 0;
  for (const auto& r : rs) n += r.suite == suite ? 1 : 0;
  return n;
}

}  // namespace

TEST(Report, RelativeErrorUsesLargerMagnitude) {
  const double rhs = 1.0 + 1e-9;
  const auto r = numeric_check("s", "n", Json::object(), 1.0, rhs, 1e-8);
  EXPECT_DOUBLE_EQ(r.rel_error, (rhs - 1.0) / rhs);
  EXPECT_TRUE(r.pass);
  const auto f = numeric_check("s", "n", Json::object(), 1.0, 1.1, 1e-8);
  EXPECT_FALSE(f.pass);
}

TEST(Report, AbsoluteFallbackBelowFloor) {
  const auto r = numeric_check("s", "n", Json::object(), 0.0, 5e-13, 1e-8);
  EXPECT_DOUBLE_EQ(r.rel_error, 5e-13);
  EXPECT_TRUE(r.pass);
  const auto big = numeric_check("s", "n", Json::object(), 0.0, 1e-6, 1e-8);
  EXPECT_FALSE(big.pass);  // above the floor the error is relative: 1
}

TEST(Report, NaturalScaleOverridesMagnitude) {
  const auto r = numeric_check("s", "n", Json::object(), 1e-9, 0.0, 1e-8, 1.0);
  EXPECT_DOUBLE_EQ(r.rel_error, 1e-9);
  EXPECT_TRUE(r.pass);
}

TEST(Report, NonFiniteValuesFail) {
  const auto r = numeric_check("s", "n", Json::object(), NAN, 1.0, 1.0);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.note.empty());
  const auto j = to_json(failed_check("s", "n", Json::object(), 1e-8, "boom"));
  EXPECT_EQ(j["rel_error"], "inf");
  EXPECT_EQ(j["note"], "boom");
}

TEST(Report, JsonCarriesSchemaVersionAndFieldOrder) {
  const auto j = to_json(numeric_check("suite", "check", Json{{"beta", 1.0}}, 1.0, 1.0, 1e-8));
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> expected{"schema_version", "suite", "check",     "params", "lhs",   "rhs",
                                          "abs_error",      "rel_error", "scale", "tolerance", "pass", "seeds"};
  EXPECT_EQ(keys, expected);
}

TEST(Report, CsvUsesSeventeenSignificantDigits) {
  const double third = 1.0 / 3.0;
  const auto text = to_csv_text({numeric_check("s", "n", Json::object(), third, third, 1e-8)});
  EXPECT_NE(text.find("0.33333333333333331"), std::string::npos) << text;
  EXPECT_EQ(std::strtod(format_double(0.1).c_str(), nullptr), 0.1);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  const auto header = text.substr(0, text.find('\n'));
  EXPECT_EQ(header, "schema_version,suite,check,params,lhs,rhs,abs_error,rel_error,scale,tolerance,pass,note");
}

TEST(Report, CsvQuotesFieldsWithCommas) {
  CheckReport r = numeric_check("s", "a,b", Json{{"x", 1}, {"y", 2}}, 1.0, 1.0, 1.0);
  const auto text = to_csv_text({r});
  EXPECT_NE(text.find("\"a,b\""), std::string::npos);
  EXPECT_NE(text.find("\"{\"\"x\"\":1,\"\"y\"\":2}\""), std::string::npos) << text;
}

TEST(Parallel, ResultsKeepInputOrder) {
  std::vector<int> items(200);
  for (int i = 0; i < 200; ++i) items[i] = i;
  const auto out = parallel_map(items, [](int x) { return x * x; }, 4);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(out[i], i * i);
  const auto serial = parallel_map(items, [](int x) { return x + 1; }, 1);
  EXPECT_EQ(serial.back(), 200);
}

TEST(Parallel, RethrowsWorkerExceptions) {
  std::vector<int> items{1, 2, 3, 4};
  EXPECT_THROW(parallel_map(
                   items,
                   [](int x) {
                     if (x == 3) throw std::runtime_error("three");
                     return x;
                   },
                   2),
               std::runtime_error);
}

TEST(Suites, CommutatorAndAdjointnessPass) {
  const auto s = small_settings();
  const auto c = commutator_suite(s);
  EXPECT_EQ(c.size(), 2u * 1u * 2u * 6u);  // representations x grids x seeds x relations
  EXPECT_TRUE(all_pass(c)) << max_rel_error(c);
  const auto a = adjointness_suite(s);
  EXPECT_EQ(a.size(), 2u * 1u * 2u * 2u);
  EXPECT_TRUE(all_pass(a)) << max_rel_error(a);
}

TEST(Suites, MomentSuitePassesAndIsWorkerIndependent) {
  auto s = small_settings();
  const auto parallel = theorem1_suite(s);
  EXPECT_EQ(parallel.size(), 3u * 2u * 7u * 2u);
  EXPECT_TRUE(all_pass(parallel)) << max_rel_error(parallel);
  s.workers = 1;
  EXPECT_EQ(to_json_text(theorem1_suite(s)), to_json_text(parallel));
}

TEST(Suites, ProofChainPasses) {
  const auto s = small_settings();
  const auto r = proofchain_suite(s);
  EXPECT_TRUE(all_pass(r)) << max_rel_error(r);
  EXPECT_EQ(count_suite(r, "spectral"), 3u * 9u);
  EXPECT_EQ(count_suite(r, "marginal"), 3u * 3u * 3u);
}

TEST(Suites, WickSuiteReportsCorpusEntries) {
  const auto r = wick_suite(wick::builtin_corpus(), 2);
  EXPECT_EQ(r.size(), 16u);
  EXPECT_TRUE(all_pass(r));
  const auto bad = wick_report({"bad", "[b(x), bd(y)]", "0", {}, 1});
  EXPECT_FALSE(bad.pass);
  EXPECT_NE(bad.note.find("difference"), std::string::npos);
  const auto broken = wick_report({"broken", "b(x", "0", {}, 1});
  EXPECT_FALSE(broken.pass);
}

TEST(Suites, BrokenSetupIsReportedNotThrown) {
  GridCase g{"bad", 2, 0.5, 1, {1.0}};  // phi length mismatch
  const auto r = theorem1_moment_check(1.0, g, 4, small_settings());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_FALSE(r[0].pass);
  EXPECT_EQ(r[0].name, "setup");
}

TEST(Distributions, LevyTableGammaStartsAtZero) {
  const auto t = levy_table(2.0, 101, 1e-6);
  ASSERT_EQ(t.columns, (std::vector<std::string>{"s", "nu_tilde", "nu"}));
  EXPECT_EQ(t.rows.size(), 101u);
  EXPECT_EQ(t.rows.front()[0], 0.0);
  EXPECT_TRUE(std::isnan(t.rows.front()[2]));
  EXPECT_TRUE(t.normalization.pass);
  EXPECT_NEAR(t.normalization.params["table_integral"].get<double>(), 1.0, 1e-2);
}

TEST(Distributions, PascalTablesAreAtomic) {
  const auto t = levy_table(3.0, 10, 1e-6);
  EXPECT_EQ(t.columns.front(), "k");
  EXPECT_EQ(t.rows.front()[0], 1.0);
  EXPECT_TRUE(t.normalization.pass);
  const auto m = marginal_table(5.0, 1.0, 10, 1e-6);
  EXPECT_EQ(m.columns, (std::vector<std::string>{"k", "s", "mass"}));
  EXPECT_TRUE(m.normalization.pass);
}

TEST(Distributions, MarginalTablesNormalize) {
  for (double beta : {0.0, 1.0, 2.0}) {
    const auto t = marginal_table(beta, 1.0, 401, 1e-6);
    EXPECT_TRUE(t.normalization.pass) << beta;
    EXPECT_NEAR(t.normalization.params["table_integral"].get<double>(), 1.0, 1e-2) << beta;
  }
  const auto csv = marginal_table(2.0, 1.0, 3, 1e-6).csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "s,density");
  // |D| < 1: the density blows up at the left end, which is left empty
  const auto sharp = marginal_table(2.0, 0.5, 11, 1e-6);
  EXPECT_TRUE(std::isnan(sharp.rows.front()[1]));
  EXPECT_TRUE(sharp.normalization.pass);
  EXPECT_TRUE(std::isfinite(sharp.normalization.params["table_integral"].get<double>()));
}
