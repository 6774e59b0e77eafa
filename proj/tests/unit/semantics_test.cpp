#include <gtest/gtest.h>

#include "lfmt/semantics.hpp"
#include "support/generators.hpp"

namespace lfmt {
namespace {

const LfRegistry& lfs() {
  static const LfRegistry r = LfRegistry::standard();
  return r;
}

TEST(LexicalFunctionText, RoundTrips) {
  for (std::string text : {"Magn", "Bon_Const", "//Mult", "//Bon_Agent"}) {
    EXPECT_EQ(lf_text(parse_lf(lfs(), text)), text);
  }
  EXPECT_EQ(parse_lf_text("Bon_Nope"), std::nullopt);
  EXPECT_EQ(parse_lf_text("_Const"), std::nullopt);
  EXPECT_THROW(parse_lf(lfs(), "Frob"), UnknownLfError);
}

TEST(LexicalFunctionText, NamesExcludeTheSubscriptSeparator) {
  EXPECT_TRUE(valid_lf_name("Magn"));
  EXPECT_TRUE(valid_lf_name("Oper1"));
  EXPECT_FALSE(valid_lf_name("Bon_Const"));
  EXPECT_FALSE(valid_lf_name("1Magn"));
  EXPECT_FALSE(valid_lf_name(""));
}

TEST(LexicalFunctionMatching, PlainQueryMatchesEverySubscript) {
  const LexicalFunction bon{"Bon", std::nullopt, false};
  const LexicalFunction bon_const{"Bon", QualiaRole::Const, false};
  const LexicalFunction bon_agent{"Bon", QualiaRole::Agent, false};
  EXPECT_TRUE(lf_matches(bon, bon_const));
  EXPECT_TRUE(lf_matches(bon, bon));
  EXPECT_TRUE(lf_matches(bon_const, bon_const));
  EXPECT_FALSE(lf_matches(bon_const, bon_agent));
  EXPECT_FALSE(lf_matches(bon_const, bon));
  EXPECT_FALSE(lf_matches(bon, LexicalFunction{"Bon", std::nullopt, true}));
  EXPECT_FALSE(lf_matches(bon, LexicalFunction{"Magn", std::nullopt, false}));
}

TEST(LexicalFunctionMatching, SubscriptedMatchesAreASubsetOfPlainOnes) {
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto query = gen::random_lf(rng, lfs());
    const auto value = gen::random_lf(rng, lfs());
    LexicalFunction plain = query;
    plain.subscript.reset();
    if (lf_matches(query, value)) {
      EXPECT_TRUE(lf_matches(plain, value)) << lf_text(query) << " " << lf_text(value);
    }
  }
}

TEST(SemIndex, ParsesAndRendersCanonically) {
  const SemIndex s = parse_sem("Magn(y), smoker(y)", lfs());
  EXPECT_EQ(render_sem(s), "smoker(x),Magn(x)");
  EXPECT_EQ(render_functional(s), "Magn(smoker)");
  EXPECT_EQ(s.base_preds(), std::vector<std::string>{"smoker"});
  ASSERT_EQ(s.functions().size(), 1u);
  EXPECT_EQ(s.functions().front().name, "Magn");
}

TEST(SemIndex, RejectsMalformedText) {
  EXPECT_THROW(parse_sem("smoker", lfs()), SemParseError);
  EXPECT_THROW(parse_sem("smoker(x),Magn(y)", lfs()), SemParseError);
  EXPECT_THROW(parse_sem("smoker(x) Magn(x)", lfs()), SemParseError);
  EXPECT_THROW(parse_sem("smoker(x),Frob_Const(x)", lfs()), SemParseError);
}

TEST(SemIndex, UnregisteredPlainNamesAreBasePredicates) {
  const SemIndex s = parse_sem("Frob(x)", lfs());
  EXPECT_TRUE(s.functions().empty());
  EXPECT_EQ(s.base_preds(), std::vector<std::string>{"Frob"});
}

TEST(SemIndex, UnionBindsTheSecondVariableToTheFirst) {
  const SemIndex a(Variable{0}, {Predication::base("smoker", Variable{0})});
  const SemIndex b(Variable{3}, {Predication::lf({"Magn", std::nullopt, false}, Variable{3})});
  EXPECT_EQ(render_sem(sem_union(a, b)), "smoker(x),Magn(x)");
  EXPECT_EQ(sem_union(a, b).var(), Variable{0});
}

TEST(SemIndex, AlphaEquivalenceIgnoresVariableNames) {
  const SemIndex a(Variable{0}, {Predication::base("p", Variable{0})});
  const SemIndex b(Variable{7}, {Predication::base("p", Variable{7})});
  const SemIndex c(Variable{7}, {Predication::base("q", Variable{7})});
  EXPECT_TRUE(alpha_equiv(a, b));
  EXPECT_FALSE(alpha_equiv(a, c));
}

}  // namespace
}  // namespace lfmt
