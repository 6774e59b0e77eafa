#include <gtest/gtest.h>

#include "fixture.hpp"
#include "lfmt/lexicon/serialize.hpp"

namespace lfmt {
namespace {

using testing::fixtures;

const std::string entries = R"(
(entry (id en:smoker) (phon "smoker") (cat N) (sem (pred smoker)))
(entry (id en:heavy) (phon "heavy") (cat A) (sem (pred heavy)))
)";

std::vector<std::string> codes_of(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& d : load_lexicon(text, "t.lex").diagnostics) out.push_back(d.code);
  return out;
}

using Codes = std::vector<std::string>;

TEST(Loader, FixturesLoadCleanly) {
  const LoadResult r = load_lexicon_paths({LFMT_LEXICON_DIR});
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_NE(r.lexicon.find("en:smoker"), nullptr);
  EXPECT_EQ(r.lexicon.find("en:nothing"), nullptr);
}

TEST(Loader, ReportsMissingAndBadFields) {
  EXPECT_EQ(codes_of("(entry (id en:x) (cat N) (sem (pred x)))"), Codes{"MISSING_FIELD"});
  EXPECT_EQ(codes_of("(entry (id en:x) (phon \"x\") (cat Q) (sem (pred x)))"), Codes{"BAD_VALUE"});
  EXPECT_EQ(codes_of("(entry (id en:x) (phon \"x\") (cat N) (sem (pred x)) (colour red))"), Codes{"UNKNOWN_FIELD"});
  EXPECT_EQ(codes_of("(frob)"), Codes{"UNKNOWN_FORM"});
  EXPECT_EQ(codes_of("(entry (id en:x)"), Codes{"SYNTAX"});
}

TEST(Loader, ReportsDuplicateIds) {
  EXPECT_EQ(codes_of(entries + "(entry (id en:heavy) (phon \"heavy\") (cat A) (sem (pred heavy)))"),
            Codes{"DUPLICATE_ID"});
}

TEST(Loader, CollocatesCarryExactlyOneRegisteredLf) {
  EXPECT_EQ(codes_of(entries + "(coll (base en:smoker) (super en:heavy) (lf Magn) (lf Oper) (pos pre))"),
            Codes{"COLL_LF_COUNT"});
  EXPECT_EQ(codes_of(entries + "(coll (base en:smoker) (super en:heavy) (lf Frob) (pos pre))"), Codes{"UNKNOWN_LF"});
  EXPECT_EQ(codes_of(entries + "(coll (base en:smoker) (super en:heavy) (lf Magn) (pos pre) (coll x))"),
            Codes{"NESTED_COLLS"});
}

TEST(Loader, ValidatesReferences) {
  EXPECT_EQ(codes_of(entries + "(coll (base en:smoker) (super en:strong) (lf Magn) (pos pre))"), Codes{"DANGLING_REF"});
  EXPECT_EQ(codes_of(entries + "(coll (base en:nobody) (super en:heavy) (lf Magn) (pos pre))"), Codes{"DANGLING_REF"});
  EXPECT_EQ(codes_of(entries + "(entry (id fr:grand) (phon \"grand\") (cat A) (sem (pred grand)))"
                               "(coll (base en:smoker) (super fr:grand) (lf Magn) (pos pre))"),
            Codes{"LANG_MISMATCH"});
  EXPECT_EQ(codes_of(entries + "(coll (base en:smoker) (super en:heavy) (lf Oper) (pos support-verb))"),
            Codes{"CATEGORY_MISMATCH"});
  EXPECT_EQ(codes_of("(entry (id nl:bos) (phon \"bos\") (cat N) (merged Mult sleutel))"), Codes{"MERGED_BASE_MISSING"});
}

TEST(Loader, ChecksSigns) {
  EXPECT_EQ(codes_of(entries + "(bi (src en smoker) (tgt fr fumeur))"), Codes{"SIGN_ENDPOINT_MISSING"});
  EXPECT_EQ(codes_of("(bi-lf Magn Oper)"), Codes{"LF_SIGN_NOT_IDENTITY"});
  EXPECT_EQ(codes_of("(bi-lf Frob Frob)"), Codes{"UNKNOWN_LF"});
}

TEST(Loader, ChecksQualia) {
  EXPECT_EQ(codes_of(entries + "(qualia (id en:smoker) (Colour grey))"), Codes{"UNKNOWN_QUALIA_ROLE"});
  const LoadResult r = load_lexicon(entries + "(coll (base en:smoker) (super en:heavy) (lf Magn_Telic) (pos pre))");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics.front().code, "QUALIA_ROLE_UNDECLARED");
  EXPECT_EQ(r.diagnostics.front().severity, Severity::warning);
  EXPECT_TRUE(r.ok());
}

TEST(Loader, ChecksSortDeclarations) {
  EXPECT_EQ(codes_of("(sorts (animate nosuch))"), Codes{"UNKNOWN_SORT"});
  EXPECT_EQ(codes_of("(sorts (a) (b a) (a b))"), Codes{"SORT_CYCLE"});
  const LoadResult r = load_lexicon("(sorts (animate) (human animate))");
  EXPECT_TRUE(r.lexicon.sorts().leq("human", "animate"));
}

TEST(Loader, DiagnosticsCarryLocations) {
  const LoadResult r = load_lexicon("\n\n(frob)", "where.lex");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(render(r.diagnostics.front()).rfind("ERROR UNKNOWN_FORM where.lex:3:1 ", 0), 0u);
}

TEST(Loader, CollFormsMayPrecedeTheirBase) {
  const LoadResult r = load_lexicon("(coll (base en:smoker) (super en:heavy) (lf Magn) (pos pre))" + entries);
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_EQ(r.lexicon.find("en:smoker")->colls.size(), 1u);
}

TEST(Serialize, IsAFixpointUnderReload) {
  const std::string once = serialize(fixtures());
  const LoadResult again = load_lexicon(once, "serialized");
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(serialize(again.lexicon), once);
  EXPECT_EQ(again.lexicon.entries().size(), fixtures().entries().size());
  EXPECT_EQ(again.lexicon.signs().size(), fixtures().signs().size());
}

TEST(Serialize, QuotesAwkwardStrings) {
  const LoadResult r =
      load_lexicon("(entry (id en:q) (phon \"say \\\"hi\\\" (now)\") (cat N) (sem (pred q)))", "q.lex");
  ASSERT_TRUE(r.ok());
  const LoadResult back = load_lexicon(serialize(r.lexicon));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back.lexicon.find("en:q")->phon, "say \"hi\" (now)");
}

TEST(ResolveCollocate, OverwritesTheSuperEntry) {
  const LexEntry& resistance = *fixtures().find("fr:resistance");
  ASSERT_EQ(resistance.colls.size(), 1u);
  const ResolvedCollocate c = resolve_collocate(fixtures(), resistance, resistance.colls.front());
  EXPECT_EQ(c.entry.id, "fr:acharne");
  EXPECT_EQ(c.entry.phon, "acharnée");
  EXPECT_EQ(c.entry.cat, Category::A);
  EXPECT_EQ(render_sem(*c.entry.sem), "Magn(x)");
  EXPECT_EQ(c.super, fixtures().find("fr:acharne"));
}

TEST(ResolveCollocate, KeepsTheSuperSurfaceWithoutAForm) {
  const LexEntry& criticism = *fixtures().find("en:criticism");
  const ResolvedCollocate c = resolve_collocate(fixtures(), criticism, criticism.colls.front());
  EXPECT_EQ(c.entry.phon, "strong");
}

TEST(ResolveCollocate, AppliesPathOverrides) {
  const LoadResult r =
      load_lexicon(entries + "(coll (base en:smoker) (super en:heavy) (lf Magn) (pos pre) (set (AGR NUM) pl))");
  ASSERT_TRUE(r.ok());
  const LexEntry& smoker = *r.lexicon.find("en:smoker");
  const auto resolved = resolve_collocate(r.lexicon, smoker, smoker.colls.front());
  EXPECT_EQ(path_value(resolved.structure, parse_path("AGR.NUM"))->atom_value(), "pl");
  EXPECT_EQ(resolved.entry.phon, "heavy");
}

TEST(ResolveCollocate, SurfaceAndMeaningAreNotOverridable) {
  EXPECT_EQ(codes_of(entries + "(coll (base en:smoker) (super en:heavy) (lf Magn) (pos pre) (set (PHON) hefty))"),
            Codes{"BAD_OVERRIDE"});
  EXPECT_EQ(codes_of(entries + "(coll (base en:smoker) (super en:heavy) (lf Magn) (pos pre) (set (SEM_IND VAR) x))"),
            Codes{"BAD_OVERRIDE"});
}

TEST(ApplyLf, RanksExactSubscriptsFirst) {
  const LexEntry& lecture = *fixtures().find("en:lecture");
  auto phons = [&](std::string_view fn) {
    std::vector<std::string> out;
    for (const auto& c : apply_lf(fixtures(), parse_lf(fixtures().lfs(), fn), lecture)) out.push_back(c.entry.phon);
    return out;
  };
  EXPECT_EQ(phons("Bon"), (std::vector<std::string>{"informative", "clear"}));
  EXPECT_EQ(phons("Bon_Const"), std::vector<std::string>{"informative"});
  EXPECT_EQ(phons("Bon_Agent"), std::vector<std::string>{"clear"});
  EXPECT_TRUE(phons("Bon_Telic").empty());
  EXPECT_TRUE(phons("Magn").empty());
}

TEST(ApplyLf, SubscriptedResultsAreASubsetOfPlainOnes) {
  for (const LexEntry& base : fixtures().entries()) {
    for (const auto& name : fixtures().lfs().names()) {
      std::set<std::string> plain;
      for (const auto& c : apply_lf(fixtures(), {name, std::nullopt, false}, base)) plain.insert(c.entry.id);
      for (QualiaRole role : all_qualia_roles) {
        for (const auto& c : apply_lf(fixtures(), {name, role, false}, base)) {
          EXPECT_TRUE(plain.count(c.entry.id)) << base.id << " " << name;
        }
      }
    }
  }
}

TEST(ApplyLf, RejectsUnregisteredFunctions) {
  EXPECT_THROW(apply_lf(fixtures(), {"Frob", std::nullopt, false}, *fixtures().find("en:smoker")), UnknownLfError);
}

TEST(ApplyLf, OvergeneralityIsMeasurable) {
  const auto found = apply_lf(fixtures(), {"Magn", std::nullopt, false}, *fixtures().find("en:oppose"));
  EXPECT_EQ(found.size(), 9u);
  EXPECT_TRUE(std::is_sorted(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.entry.phon < b.entry.phon;
  }));
}

TEST(LexiconIndices, LookUpByPhonPredicateAndMergedSignature) {
  EXPECT_EQ(fixtures().by_phon("fr", "lourde").front()->id, "fr:lourd");
  EXPECT_EQ(fixtures().by_pred("en", "smoker").front()->id, "en:smoker");
  EXPECT_TRUE(fixtures().by_pred("nl", "sleutel").size() == 1);
  const auto merged = fixtures().merged_for("nl", {"Mult", std::nullopt, false}, "sleutel");
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged.front()->id, "nl:sleutelbos");
}

TEST(LexiconIndices, TranslatesPredicatesInBothDirections) {
  EXPECT_EQ(fixtures().translate_pred("en", "fr", "smoker"), "fumeur");
  EXPECT_EQ(fixtures().translate_pred("fr", "en", "fumeur"), "smoker");
  EXPECT_EQ(fixtures().translate_pred("en", "fr", "lecture"), std::nullopt);
  EXPECT_TRUE(fixtures().has_lf_identity("Magn"));
}

}  // namespace
}  // namespace lfmt
