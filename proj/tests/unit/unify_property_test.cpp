#include <gtest/gtest.h>

#include "support/properties.hpp"

namespace lfmt {
namespace {

void expect_clean(const props::Report& r) {
  EXPECT_EQ(r.violations, 0u);
  for (const auto& e : r.examples) ADD_FAILURE() << e;
}

// Small seeded runs; the acceptance runner does the large one.
TEST(UnifyProperties, AgreeWithPathSetOracle) {
  const auto r = props::unifier_properties(1, 500);
  EXPECT_GE(r.cases, 500u);
  expect_clean(r);
}

TEST(UnifyProperties, HoldForOtherSeeds) {
  for (std::uint32_t seed : {2u, 3u, 4u}) {
    SCOPED_TRACE(seed);
    expect_clean(props::unifier_properties(seed, 1000, false));
  }
}

TEST(OverwriteProperties, LawsHold) {
  for (std::uint32_t seed : {11u, 12u}) {
    SCOPED_TRACE(seed);
    expect_clean(props::overwrite_laws(seed, 300));
  }
}

TEST(Oracle, DescribesReentrancy) {
  const auto a = oracle::abstract_of(parse_avm("[F: #1=[s1] G: #1]"));
  EXPECT_EQ(a.rep.at(Path{"G"}), Path{"F"});
  EXPECT_EQ(a.labels.at(Path{"F"}).sort, "s1");
}

}  // namespace
}  // namespace lfmt
