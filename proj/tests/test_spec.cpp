#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "prccsl/av.hpp"
#include "prccsl/error.hpp"
#include "prccsl/spec.hpp"
#include "spec_gen.hpp"

namespace prccsl {
namespace {

ClockExpr N(const char* n) { return ClockExpr::named(n); }
ClockExpr delayed(ClockExpr base, std::int64_t d) {
  return ClockExpr::delay_for(std::move(base), Amount::literal(d), N("ms"));
}

std::vector<ProbRelation> expand_line(const std::string& decl, const std::string& line) {
  const SpecFile s = parse_spec(decl + "\n" + line + "\n");
  return expand(s.constraints.at(0));
}

TEST(Expand, PeriodicIsCoincidenceWithPeriodicOn) {
  const auto rels = expand_line("clock cmrTrig", "periodic cmrTrig period 50 prob 0.95");
  ASSERT_EQ(rels.size(), 1u);
  EXPECT_EQ(rels[0], (ProbRelation{RelationKind::Coincidence, N("cmrTrig"),
                                   ClockExpr::periodic_on(N("ms"), Amount::literal(50)), Rational(19, 20)}));
}

TEST(Expand, EndToEndIsPrecedencePair) {
  const auto rels = expand_line("clock signIn, spOut", "e2e from signIn to spOut within [150,250] prob 0.95");
  ASSERT_EQ(rels.size(), 2u);
  EXPECT_EQ(rels[0], (ProbRelation{RelationKind::Precedence, delayed(N("signIn"), 150), N("spOut"), Rational(19, 20)}));
  EXPECT_EQ(rels[1], (ProbRelation{RelationKind::Precedence, N("spOut"), delayed(N("signIn"), 250), Rational(19, 20)}));
  const auto upper_only = expand_line("clock a, b", "e2e from a to b within 200");
  ASSERT_EQ(upper_only.size(), 1u);
  EXPECT_EQ(upper_only[0].kind, RelationKind::Precedence);
  EXPECT_EQ(upper_only[0].p, kDefaultThreshold);
}

TEST(Expand, ExecutionIsCausalityPair) {
  const auto rels = expand_line("clock imIn, signOut", "execution from imIn to signOut within [100, 150]");
  ASSERT_EQ(rels.size(), 2u);
  EXPECT_EQ(rels[0], (ProbRelation{RelationKind::Causality, delayed(N("imIn"), 100), N("signOut"), kDefaultThreshold}));
  EXPECT_EQ(rels[1], (ProbRelation{RelationKind::Causality, N("signOut"), delayed(N("imIn"), 150), kDefaultThreshold}));
}

TEST(Expand, SyncNestsLeft) {
  const auto rels = expand_line("clock speed, signType, direct, gear, torque",
                                "sync speed, signType, direct, gear, torque tolerance 40");
  ASSERT_EQ(rels.size(), 1u);
  const ClockExpr sup = ClockExpr::sup(
      ClockExpr::sup(ClockExpr::sup(ClockExpr::sup(N("speed"), N("signType")), N("direct")), N("gear")), N("torque"));
  const ClockExpr inf = ClockExpr::inf(
      ClockExpr::inf(ClockExpr::inf(ClockExpr::inf(N("speed"), N("signType")), N("direct")), N("gear")), N("torque"));
  EXPECT_EQ(rels[0], (ProbRelation{RelationKind::Causality, sup, delayed(inf, 40), kDefaultThreshold}));
}

TEST(Expand, SporadicComparisonExclusion) {
  const auto sporadic = expand_line("clock obstc, veRun", "sporadic from obstc to veRun min 500");
  EXPECT_EQ(sporadic.at(0), (ProbRelation{RelationKind::Precedence, delayed(N("obstc"), 500), N("veRun"), kDefaultThreshold}));
  const SpecFile s = parse_spec("clock signIn\nconst W_ctrl = 150\nconst W_vd = 100\n"
                                "comparison on signIn bound 250 budget (W_ctrl + W_vd)\n");
  const auto cmp = expand(s.constraints.at(0));
  ASSERT_EQ(cmp.size(), 1u);
  EXPECT_EQ(cmp[0].kind, RelationKind::Causality);
  EXPECT_EQ(cmp[0].left, delayed(N("signIn"), 250));
  EXPECT_EQ(cmp[0].right.amount().value(), 250);
  EXPECT_EQ(cmp[0].right.amount().terms.size(), 2u);
  EXPECT_EQ(cmp[0].right.amount().terms[0].name, "W_ctrl");
  const auto excl = expand_line("clock turnLeft, rightOn", "exclusion turnLeft, rightOn prob 0.95");
  EXPECT_EQ(excl.at(0), (ProbRelation{RelationKind::Exclusion, N("turnLeft"), N("rightOn"), Rational(19, 20)}));
}

TEST(Parse, EmptyFileAndComments) {
  EXPECT_EQ(parse_spec(""), SpecFile{});
  EXPECT_EQ(parse_spec("# only a comment\n\n   \n"), SpecFile{});
}

TEST(Parse, PlainRelationsAndLabels) {
  const SpecFile s = parse_spec(
      "clock a, b\n"
      "let d = {a delayFor 3 on ms}\n"
      "X: d causes b prob 19/20\n"
      "a excludes b\n");
  ASSERT_EQ(s.constraints.size(), 2u);
  EXPECT_EQ(s.constraints[0].id, "X");
  EXPECT_EQ(s.constraints[0].p, Rational(19, 20));
  EXPECT_EQ(s.constraints[1].id, "C2");
  EXPECT_FALSE(s.constraints[1].labeled);
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse_spec("clock a\n\nperiodic a perio 3\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 12);
  }
  try {
    parse_spec("clock a\nquery Q: hypothesis always (h(a) >= ) bound 10\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_spec("clock a\nquery Q: hypothesis always (h(a) >= 0) bound 10 alpha 0.1 alpha 0.2\n"), Error);
}

ErrorCode first_diag(const std::string& text) {
  const auto d = validate_spec(parse_spec_syntax(text));
  if (d.empty()) throw std::runtime_error("no diagnostics for: " + text);
  return d.front().code;
}

TEST(Validate, Diagnostics) {
  EXPECT_EQ(first_diag("clock ms2\nlet a = {a delayFor 3 on ms}\n"), ErrorCode::CyclicDefinition);
  EXPECT_EQ(first_diag("let a = {b delayFor 1 on ms}\nlet b = {a delayFor 1 on ms}\n"), ErrorCode::CyclicDefinition);
  EXPECT_EQ(first_diag("clock a\na causes zz\n"), ErrorCode::UndeclaredClock);
  EXPECT_EQ(first_diag("clock a, a\n"), ErrorCode::DuplicateName);
  EXPECT_EQ(first_diag("clock a\nperiodic a period 0\n"), ErrorCode::BadParameter);
  EXPECT_EQ(first_diag("clock a, b\nexecution from a to b within [5, 3]\n"), ErrorCode::BadParameter);
  EXPECT_EQ(first_diag("clock a, b\na causes b prob 1.5\n"), ErrorCode::BadParameter);
  EXPECT_EQ(first_diag("clock a, b\nR: a causes b\nquery Q: hypothesis S bound 10\n"), ErrorCode::UnknownConstraint);
  EXPECT_EQ(first_diag("clock a, b\nR: a causes b\nquery Q: hypothesis R.2 bound 10\n"), ErrorCode::UnknownConstraint);
  EXPECT_EQ(first_diag("clock a, b\nR: a causes b\nquery Q: hypothesis R bound 0\n"), ErrorCode::BadParameter);
  EXPECT_EQ(first_diag("clock a, b\nR: a causes b\nquery Q: hypothesis R bound 10 alpha 0.7\n"), ErrorCode::BadParameter);
  EXPECT_EQ(first_diag("clock a, b\nR: a causes b prob 1\nquery Q: hypothesis R bound 10\n"), ErrorCode::BadParameter);
  EXPECT_EQ(first_diag("clock a\nquery Q: expect max gap(a) bound 10 runs 1\n"), ErrorCode::BadParameter);
  EXPECT_EQ(first_diag("clock a\nquery Q: simulate 1 bound 10 { h(b) }\n"), ErrorCode::UndeclaredClock);
  EXPECT_EQ(first_diag("clock a, b\nR: a causes b\nR: b causes a\n"), ErrorCode::DuplicateName);
}

TEST(Validate, ReportsEveryProblemWithLines) {
  const auto d = validate_spec(parse_spec_syntax("clock a\na causes zz\nperiodic a period 0\n"));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].line, 2);
  EXPECT_EQ(d[1].line, 3);
}

TEST(Validate, BundledAvSpecIsClean) {
  const SpecFile s = parse_spec_syntax(build_av_bundle().spec_text);
  EXPECT_TRUE(validate_spec(s).empty());
}

TEST(RoundTrip, BundledAvSpec) {
  const SpecFile s = parse_spec(build_av_bundle().spec_text);
  const std::string printed = print_spec(s);
  EXPECT_EQ(parse_spec(printed), s);
  EXPECT_EQ(print_spec(parse_spec(printed)), printed);
}

using testing::SpecGen;

TEST(RoundTrip, ThousandRandomSpecs) {
  SpecGen gen(2024);
  for (int i = 0; i < 1000; ++i) {
    const std::string text = gen();
    SpecFile s;
    ASSERT_NO_THROW(s = parse_spec(text)) << text;
    const std::string printed = print_spec(s);
    SpecFile back;
    ASSERT_NO_THROW(back = parse_spec(printed)) << printed;
    ASSERT_EQ(back, s) << "original:\n" << text << "\nprinted:\n" << printed;
    ASSERT_EQ(print_spec(back), printed);
  }
}

}  // namespace
}  // namespace prccsl
