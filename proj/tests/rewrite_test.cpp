#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "symrw/rewrite.hpp"

namespace symrw {
namespace {

const Syntax kTptp = Syntax::tptp();

Term P(const char* s) { return parse_term(s, kTptp); }
RewriteRule rule(const char* text, const char* name = "r") { return parse_rule(text, name); }

TEST(MatchAt, BindsVariable) {
  auto theta = match_at(P("o(V0, e)"), P("o(v2, e)"));
  ASSERT_TRUE(theta);
  ASSERT_EQ(theta->size(), 1u);
  EXPECT_EQ(theta->at("V0"), P("v2"));
  EXPECT_EQ(substitute(P("o(V0, e)"), *theta), P("o(v2, e)"));
}

TEST(MatchAt, GroundPatternGivesEmptySubstitution) {
  auto theta = match_at(P("b(s(e, v1), e)"), P("b(s(e, v1), e)"));
  ASSERT_TRUE(theta);
  EXPECT_TRUE(theta->empty());
}

TEST(MatchAt, SecondArgumentMismatch) {
  EXPECT_FALSE(match_at(P("o(V0, e)"), P("o(v1, o(v2, e))")));
  EXPECT_FALSE(oracle::match(P("o(V0, e)"), P("o(v1, o(v2, e))")));
}

TEST(MatchAt, NonLinearPatternNeedsEqualBindings) {
  EXPECT_TRUE(match_at(P("f(X, X)"), P("f(g(a), g(a))")));
  EXPECT_FALSE(match_at(P("f(X, X)"), P("f(g(a), g(e))")));
}

TEST(MatchAt, SubjectVariablesAreRigid) {
  EXPECT_FALSE(match_at(P("g(a)"), P("g(Y)")));
  auto theta = match_at(P("g(X)"), P("g(Y)"));
  ASSERT_TRUE(theta);
  EXPECT_EQ(theta->at("X"), P("Y"));
}

TEST(SubtermPositions, Preorder) {
  EXPECT_EQ(subterm_positions(P("x")), (std::vector<Position>{{}}));
  EXPECT_EQ(subterm_positions(P("o(v1, e)")), (std::vector<Position>{{}, {0}, {1}}));
  const Term t = P("t(v0, o(v1, o(v2, e)))");
  EXPECT_EQ(subterm_positions(t).size(), 7u);
  EXPECT_EQ(oracle::all_subterms(t).size(), 7u);
}

TEST(ApplyRuleAt, GroundRewriteInContext) {
  EXPECT_EQ(apply_rule_at(P("k(b(s(e, v1), e), v0)"), rule("b(s(e, v1), e) = v1"), {0}), P("k(v1, v0)"));
}

TEST(ApplyRuleAt, NongroundRewriteInContext) {
  EXPECT_EQ(apply_rule_at(P("t(v0, o(v1, o(v2, e)))"), rule("o(V0, e) = V0"), {1, 1}), P("t(v0, o(v1, v2))"));
}

TEST(ApplyRuleAt, RootRewrite) { EXPECT_EQ(apply_rule_at(P("o(v7, e)"), rule("o(V0, e) = V0"), {}), P("v7")); }

TEST(ApplyRuleAt, Errors) {
  EXPECT_THROW(apply_rule_at(P("k(v1, v0)"), rule("o(V0, e) = V0"), {}), NoMatch);
  EXPECT_THROW(apply_rule_at(P("k(v1, v0)"), rule("o(V0, e) = V0"), {2}), InvalidPosition);
  EXPECT_THROW(apply_rule_at(P("k(v1, v0)"), rule("o(V0, e) = V0"), {0, 0}), InvalidPosition);
}

TEST(AllSingleRewrites, TwoPositions) {
  const auto rws = all_single_rewrites(P("k(o(v1, e), o(v2, e))"), rule("o(V0, e) = V0"));
  ASSERT_EQ(rws.size(), 2u);
  EXPECT_EQ(rws[0].result, P("k(v1, o(v2, e))"));
  EXPECT_EQ(rws[1].result, P("k(o(v1, e), v2)"));
  EXPECT_EQ(rws.size(), oracle::rewrites(P("k(o(v1, e), o(v2, e))"), P("o(V0, e)"), P("V0")).size());
}

TEST(AllSingleRewrites, NoOccurrence) { EXPECT_TRUE(all_single_rewrites(P("k(v1, v0)"), rule("o(V0, e) = V0")).empty()); }

TEST(AllSingleRewrites, GroundRuleFiresOnce) {
  const auto rws = all_single_rewrites(P("k(b(s(e, v1), e), v0)"), rule("b(s(e, v1), e) = v1"));
  ASSERT_EQ(rws.size(), 1u);
  EXPECT_EQ(rws[0].result, P("k(v1, v0)"));
}

TEST(RewriteRule, RejectsFreshRhsVariables) {
  EXPECT_THROW(rule("o(V0, e) = V1"), std::invalid_argument);
  EXPECT_TRUE(rule("b(s(e, v1), e) = v1").is_ground());
  EXPECT_FALSE(rule("o(V0, e) = V0").is_ground());
}

TEST(ParseRule, Errors) {
  EXPECT_THROW(parse_rule("o(V0, e)", "r"), SyntaxError);
  EXPECT_THROW(parse_rule("a = b = c", "r"), SyntaxError);
  EXPECT_THROW(parse_rule("o(V0, = V0", "r"), SyntaxError);
}

TEST(SynthPairs, JointTwoPairs) {
  const std::vector<RewriteRule> rules{rule("o(V0,e)=V0")};
  const std::vector<Term> terms{P("k(o(v1, e), o(v2, e))")};
  const auto groups = synth_pairs(rules, terms, SynthMode::Joint);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].name, "joint");
  EXPECT_EQ(groups[0].pairs.size(), 2u);
}

TEST(SynthPairs, EmptyRuleSet) {
  const std::vector<Term> terms{P("k(o(v1, e), o(v2, e))")};
  EXPECT_TRUE(synth_pairs({}, terms, SynthMode::Joint).empty());
  EXPECT_TRUE(synth_pairs({}, terms, SynthMode::PerRule).empty());
}

TEST(SynthPairs, GroundRulePair) {
  const std::vector<RewriteRule> rules{rule("b(s(e, v1), e) = v1", "ground")};
  const std::vector<Term> terms{P("k(b(s(e, v1), e), v0)")};
  const auto groups = synth_pairs(rules, terms, SynthMode::PerRule);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].name, "ground");
  ASSERT_EQ(groups[0].pairs.size(), 1u);
  EXPECT_EQ(join_tokens(groups[0].pairs[0].src), "k ( b ( s ( e , v1 ) , e ) , v0 )");
  EXPECT_EQ(join_tokens(groups[0].pairs[0].tgt), "k ( v1 , v0 )");
}

TEST(SynthPairs, PerRuleGroupsByName) {
  const std::vector<RewriteRule> rules{rule("o(V0, e) = V0", "ident"), rule("b(s(e, v1), e) = v1", "ground")};
  const std::vector<Term> terms{P("k(b(s(e, v1), e), o(v0, e))"), P("o(v3, e)")};
  const auto per = synth_pairs(rules, terms, SynthMode::PerRule);
  ASSERT_EQ(per.size(), 2u);
  EXPECT_EQ(per[0].name, "ident");
  EXPECT_EQ(per[0].pairs.size(), 2u);
  EXPECT_EQ(per[1].pairs.size(), 1u);
  EXPECT_EQ(synth_pairs(rules, terms, SynthMode::Joint)[0].pairs.size(), 3u);
}

TEST(LoadRules, NamedAfterFile) {
  const auto path = std::filesystem::temp_directory_path() / "abstrused1u.rule";
  {
    std::ofstream out(path);
    out << "o(V0, e) = V0\n\nb(s(e, v1), e) = v1\n";
  }
  const auto rules = load_rules(path);
  ASSERT_EQ(rules.size(), 2u);
  EXPECT_EQ(rules[0].name(), "abstrused1u");
  EXPECT_EQ(rules[1].name(), "abstrused1u");
  std::filesystem::remove(path);
  EXPECT_THROW(load_rules(path), IoError);
}

TEST(RewriteProperties, LocalitySoundnessAndGroundSpecialization) {
  oracle::TptpTermSource src(21);
  for (int i = 0; i < 1000; ++i) {
    const Term t = src.term(5, false);
    const RewriteRule r = src.rule(t);
    for (const auto& rw : all_single_rewrites(t, r)) {
      const Term& before = subterm_at(t, rw.position);
      auto theta = match_at(r.lhs(), before);
      ASSERT_TRUE(theta);
      ASSERT_EQ(substitute(r.lhs(), *theta), before);
      if (r.is_ground()) {
        ASSERT_TRUE(theta->empty());
      }
      // Every position not on or below the rewritten one is untouched.
      for (const auto& pos : subterm_positions(t)) {
        const bool below = pos.size() >= rw.position.size() && std::equal(rw.position.begin(), rw.position.end(), pos.begin());
        const bool above = pos.size() < rw.position.size() && std::equal(pos.begin(), pos.end(), rw.position.begin());
        if (!below && !above) {
          ASSERT_EQ(subterm_at(rw.result, pos), subterm_at(t, pos));
        }
      }
      ASSERT_EQ(subterm_at(rw.result, rw.position), substitute(r.rhs(), *theta));
    }
  }
}

TEST(RewriteProperties, AgreesWithBruteForceScan) {
  oracle::TptpTermSource src(33);
  std::size_t total = 0;
  for (int i = 0; i < 1000; ++i) {
    const Term t = src.term(5, false);
    const RewriteRule r = src.rule(t);
    std::set<std::pair<std::vector<std::size_t>, std::string>> got;
    for (const auto& rw : all_single_rewrites(t, r)) got.emplace(rw.position, print_term(rw.result, kTptp));
    ASSERT_EQ(got, oracle::rewrites(t, r.lhs(), r.rhs())) << print_term(t, kTptp);
    total += got.size();
  }
  EXPECT_GT(total, 300u);
}

}  // namespace
}  // namespace symrw
