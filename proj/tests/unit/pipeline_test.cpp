#include <gtest/gtest.h>

#include "fixture.hpp"

namespace lfmt {
namespace {

using testing::fixtures;
using testing::sem;
using testing::surfaces;

std::vector<std::string> readings(std::vector<std::string> tokens, std::string_view lang) {
  std::vector<std::string> out;
  for (const auto& r : analyze(tokens, lang, fixtures())) out.push_back(render_reading(r));
  return out;
}

PipelineErrorKind failure(const std::function<void()>& f) {
  try {
    f();
  } catch (const PipelineError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no PipelineError";
  return PipelineErrorKind::no_parse;
}

TEST(Analysis, CollocationalReadingComesFirst) {
  EXPECT_EQ(readings({"heavy", "smoker"}, "en"),
            (std::vector<std::string>{"[collocational Magn] smoker(x),Magn(x)", "[literal] heavy(x),smoker(x)"}));
}

TEST(Analysis, FreeCombinationsAreOnlyLiteral) {
  EXPECT_EQ(readings({"heavy", "box"}, "en"), std::vector<std::string>{"[literal] box(x),heavy(x)"});
}

TEST(Analysis, HeadComplementCollocationsSkipFunctionWords) {
  EXPECT_EQ(readings({"commit", "a", "crime"}, "en").front(), "[collocational Oper] crime(x),Oper(x)");
  EXPECT_EQ(readings({"bunch", "of", "keys"}, "en").front(), "[collocational Mult] key(x),Mult(x)");
}

TEST(Analysis, CollocateSurfaceVariantsAreRecognized) {
  EXPECT_EQ(readings({"résistance", "acharnée"}, "fr").front(), "[collocational Magn] résistance(x),Magn(x)");
  EXPECT_EQ(readings({"starker", "Raucher"}, "de").front(), "[collocational Magn] Raucher(x),Magn(x)");
}

// The free sense of a collocate stays available as a second reading.
TEST(Analysis, LiteralReadingsFollowCollocationalOnes) {
  EXPECT_EQ(readings({"starker", "Raucher"}, "de"),
            (std::vector<std::string>{"[collocational Magn] Raucher(x),Magn(x)", "[literal] Raucher(x),stark(x)"}));
}

TEST(Analysis, MergedEntriesReadAsCollocations) {
  EXPECT_EQ(readings({"sleutelbos"}, "nl"), std::vector<std::string>{"[collocational //Mult] sleutel(x),Mult(x)"});
  EXPECT_EQ(readings({"sleutel"}, "nl"), std::vector<std::string>{"[literal] sleutel(x)"});
}

TEST(Analysis, PhraseStructureSharesTheIndex) {
  const Reading r = analyze({"heavy", "smoker"}, "en", fixtures()).front();
  EXPECT_EQ(r.structure.sort(), "collocation");
  const auto head_var = path_value(r.structure, parse_path("HEAD_DTR.SEM_IND.VAR"));
  const auto dtrs = r.structure.get("ADJ_DTRS");
  ASSERT_TRUE(head_var && dtrs);
  ASSERT_EQ(dtrs->members().size(), 1u);
  const auto dep_var = path_value(dtrs->members().front(), parse_path("SEM_IND.VAR"));
  ASSERT_TRUE(dep_var);
  EXPECT_EQ(head_var->root(), dep_var->root());
  EXPECT_EQ(r.spans.size(), 2u);
  EXPECT_EQ(r.spans[0].entry, "en:heavy");
}

TEST(Analysis, ReportsUnknownTokensAndParseFailures) {
  EXPECT_EQ(failure([] { analyze({"purple", "smoker"}, "en", fixtures()); }), PipelineErrorKind::token_unknown);
  EXPECT_EQ(failure([] { analyze({"smoker", "heavy"}, "en", fixtures()); }), PipelineErrorKind::no_parse);
  EXPECT_EQ(failure([] { analyze({"heavy", "the", "smoker"}, "en", fixtures()); }), PipelineErrorKind::token_unknown);
  EXPECT_EQ(failure([] { analyze({}, "en", fixtures()); }), PipelineErrorKind::no_parse);
}

TEST(License, FollowsTheCollocationPrinciple) {
  const Lexicon& lex = fixtures();
  const auto magn = license(lex, *lex.find("en:smoker"), *lex.find("en:heavy"), RuleKind::head_adjunct);
  ASSERT_TRUE(magn);
  EXPECT_EQ(lf_text(*magn), "Magn");
  EXPECT_FALSE(license(lex, *lex.find("en:box"), *lex.find("en:heavy"), RuleKind::head_adjunct));
  const auto oper = license(lex, *lex.find("en:commit"), *lex.find("en:crime"), RuleKind::head_complement);
  ASSERT_TRUE(oper);
  EXPECT_EQ(lf_text(*oper), "Oper");
  EXPECT_FALSE(license(lex, *lex.find("en:smoker"), *lex.find("en:heavy"), RuleKind::head_complement));
}

TEST(Transfer, MapsPredicatesAndKeepsFunctions) {
  EXPECT_EQ(render_sem(transfer(sem("smoker(x),Magn(x)"), "en", "fr", fixtures())), "fumeur(x),Magn(x)");
  EXPECT_EQ(render_sem(transfer(sem("heavy(x),box(x)"), "en", "fr", fixtures())), "boite(x),lourd(x)");
  EXPECT_EQ(render_sem(transfer(sem("lecture(x),Bon(x)"), "en", "en", fixtures())), "lecture(x),Bon(x)");
}

TEST(Transfer, ReportsMissingSigns) {
  EXPECT_EQ(failure([] { transfer(sem("lecture(x)"), "en", "fr", fixtures()); }), PipelineErrorKind::missing_sign);
  const LoadResult bare = load_lexicon(R"(
(entry (id en:p) (phon "p") (cat N) (sem (pred p)))
(entry (id fr:q) (phon "q") (cat N) (sem (pred q)))
(bi (src en p) (tgt fr q)))");
  ASSERT_TRUE(bare.ok());
  EXPECT_EQ(failure([&] { transfer(parse_sem("p(x),Magn(x)", bare.lexicon.lfs()), "en", "fr", bare.lexicon); }),
            PipelineErrorKind::missing_sign);
}

TEST(Transfer, ParaphraseCandidatesUnmergeToTheirInput) {
  const SemIndex s = sem("sleutel(x),Mult(x)");
  const auto found = paraphrase_candidates(s, "nl", fixtures());
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found.front().entry->id, "nl:sleutelbos");
  EXPECT_TRUE(alpha_equiv(unmerge(*found.front().entry, s.var()), s));
  EXPECT_TRUE(paraphrase_candidates(sem("sleutel(x),Magn(x)"), "nl", fixtures()).empty());
  EXPECT_THROW(unmerge(*fixtures().find("nl:sleutel")), CompositionError);
}

TEST(Generation, PrefersMergedThenCollocational) {
  const auto nl = generate(sem("sleutel(x),Mult(x)"), "nl", fixtures());
  ASSERT_FALSE(nl.empty());
  EXPECT_EQ(render_realization(nl.front()), "\"sleutelbos\" [merged //Mult nl:sleutelbos]");
  const auto en = generate(sem("key(x),Mult(x)"), "en", fixtures());
  EXPECT_EQ(render_realization(en.front()), "\"bunch of keys\" [collocational Mult en:key en:bunch]");
}

TEST(Generation, PlacesCollocatesByPosition) {
  EXPECT_EQ(surfaces(generate(sem("fumeur(x),Magn(x)"), "fr", fixtures())), std::vector<std::string>{"grand fumeur"});
  EXPECT_EQ(surfaces(generate(sem("résistance(x),Magn(x)"), "fr", fixtures())),
            std::vector<std::string>{"résistance acharnée"});
  EXPECT_EQ(surfaces(generate(sem("crime(x),Oper(x)"), "fr", fixtures())),
            std::vector<std::string>{"commettre un crime"});
}

TEST(Generation, LiteralOutputUsesFreePositions) {
  const auto fr = generate(sem("boite(x),lourd(x)"), "fr", fixtures());
  ASSERT_EQ(fr.size(), 1u);
  EXPECT_EQ(render_realization(fr.front()), "\"boite lourde\" [literal - fr:boite fr:lourd]");
  EXPECT_EQ(surfaces(generate(sem("box(x),heavy(x)"), "en", fixtures())), std::vector<std::string>{"heavy box"});
  EXPECT_EQ(surfaces(generate(sem("smoker(x)"), "en", fixtures())), std::vector<std::string>{"smoker"});
}

TEST(Generation, QualiaSubscriptsNarrowTheChoice) {
  EXPECT_EQ(surfaces(generate(sem("lecture(x),Bon_Const(x)"), "en", fixtures())),
            std::vector<std::string>{"informative lecture"});
  EXPECT_EQ(surfaces(generate(sem("lecture(x),Bon(x)"), "en", fixtures())),
            (std::vector<std::string>{"informative lecture", "clear lecture"}));
}

TEST(Generation, ReportsGapsAndMissingBases) {
  EXPECT_EQ(failure([] { generate(sem("smoker(x),Oper(x)"), "en", fixtures()); }), PipelineErrorKind::realization_gap);
  EXPECT_EQ(failure([] { generate(sem("gloop(x),Magn(x)"), "en", fixtures()); }), PipelineErrorKind::no_base_entry);
  EXPECT_EQ(failure([] { generate(sem("Magn(x)"), "en", fixtures()); }), PipelineErrorKind::no_base_entry);
}

TEST(Generation, RealizationsAnalyzeBackToTheirInput) {
  for (std::string text : {"smoker(x),Magn(x)", "criticism(x),Magn(x)", "crime(x),Oper(x)", "key(x),Mult(x)",
                           "lecture(x),Bon_Agent(x)", "oppose(x),Magn(x)"}) {
    const SemIndex s = sem(text);
    for (const auto& r : generate(s, "en", fixtures())) {
      std::vector<std::string> tokens;
      std::istringstream in(r.surface);
      for (std::string t; in >> t;) tokens.push_back(t);
      const auto back = analyze(tokens, "en", fixtures());
      EXPECT_TRUE(std::any_of(back.begin(), back.end(), [&](const Reading& b) { return alpha_equiv(b.sem, s); }))
          << r.surface;
    }
  }
}

TEST(Linearize, RejectsPositionsTheRuleCannotPlace) {
  const Grammar en = fixtures().grammar("en");
  const PhraseRule* adjunct = detail::rule_for(en, Position::pre);
  ASSERT_NE(adjunct, nullptr);
  EXPECT_EQ(detail::linearize("smoker", "heavy", Position::pre, *adjunct), "heavy smoker");
  EXPECT_THROW(detail::linearize("crime", "commit", Position::support_verb, *adjunct), std::invalid_argument);
}

}  // namespace
}  // namespace lfmt
