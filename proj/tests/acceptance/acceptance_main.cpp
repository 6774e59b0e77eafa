// Acceptance runner: one PASS/FAIL line per criterion; non-zero exit on failure.
#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lfmt/cli.hpp"
#include "lfmt/lexicon/serialize.hpp"
#include "support/properties.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lfmt;

const std::string lexicon_dir = LFMT_LEXICON_DIR;
const std::string corrupt_dir = LFMT_FIXTURE_DIR "/corrupt";

struct Run {
  int status = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.push_back("--lexicon");
  args.push_back(lexicon_dir);
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.status = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

Outcome pipeline_reproduction() {
  Outcome o;
  const Run r = cli({"translate", "--from", "en", "--to", "fr", "--trace", "heavy", "smoker"});
  o.require(r.status == 0, "exit " + std::to_string(r.status));
  o.require(r.out == "1: heavy smoker\n2: Magn(smoker)\n3: Magn(fumeur)\n4: grand fumeur\ngrand fumeur\n",
            "stdout was:\n" + r.out);
  return o;
}

Outcome german_variant() {
  Outcome o;
  const Run r = cli({"translate", "--from", "en", "--to", "de", "heavy", "smoker"});
  o.require(r.status == 0 && r.out == "starker Raucher\n", "got '" + r.out + "'");
  return o;
}

Outcome literal_contrast() {
  Outcome o;
  const Run t = cli({"translate", "--from", "en", "--to", "fr", "--trace", "heavy", "box"});
  o.require(t.status == 0, "translate exit " + std::to_string(t.status));
  o.require(t.out.find("grand") == std::string::npos, "output mentions grand");
  o.require(t.err.find("generation: \"boite lourde\" [literal") != std::string::npos, "no literal realization in trace");
  const Run a = cli({"analyze", "--lang", "en", "heavy", "box"});
  o.require(a.status == 0 && a.out == "[literal] box(x),heavy(x)\n", "analyze gave '" + a.out + "'");
  return o;
}

Outcome compound_divergence() {
  Outcome o;
  const Run r = cli({"translate", "--from", "en", "--to", "nl", "--trace", "bunch", "of", "keys"});
  o.require(r.status == 0, "exit " + std::to_string(r.status));
  o.require(r.out.size() >= 11 && r.out.substr(r.out.size() - 11) == "sleutelbos\n", "stdout was:\n" + r.out);
  o.require(r.err.find("generation: \"sleutelbos\" [merged //Mult nl:sleutelbos]") != std::string::npos,
            "trace lacks the merged strategy:\n" + r.err);
  return o;
}

Outcome support_verb() {
  Outcome o;
  const Run r = cli({"translate", "--from", "en", "--to", "fr", "commit", "a", "crime"});
  o.require(r.status == 0 && r.out == "commettre un crime\n", "got '" + r.out + "'");
  return o;
}

Outcome overgenerality() {
  Outcome o;
  const Run r = cli({"generate", "--lang", "en", "--sem", "oppose(x),Magn(x)"});
  std::vector<std::string> lines;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  std::vector<std::string> expected;
  for (const char* adv : {"adamantly", "bitterly", "consistently", "steadfastly", "strongly", "vehemently", "vigorously",
                          "deeply", "resolutely"}) {
    expected.push_back(std::string(adv) + " oppose");
  }
  std::sort(expected.begin(), expected.end());
  o.require(r.status == 0, "exit " + std::to_string(r.status));
  o.require(lines == expected, "got:\n" + r.out);
  return o;
}

Outcome qualia_precision() {
  Outcome o;
  const Run c = cli({"generate", "--lang", "en", "--sem", "lecture(x),Bon_Const(x)"});
  const Run a = cli({"generate", "--lang", "en", "--sem", "lecture(x),Bon_Agent(x)"});
  const Run p = cli({"generate", "--lang", "en", "--sem", "lecture(x),Bon(x)"});
  o.require(c.out == "informative lecture\n", "Bon_Const gave '" + c.out + "'");
  o.require(a.out == "clear lecture\n", "Bon_Agent gave '" + a.out + "'");
  o.require(p.out == "informative lecture\nclear lecture\n", "Bon gave '" + p.out + "'");
  return o;
}

Outcome report_outcome(const props::Report& r, std::size_t minimum) {
  Outcome o;
  o.require(r.cases >= minimum, std::to_string(r.cases) + " cases, need " + std::to_string(minimum));
  o.require(r.violations == 0, std::to_string(r.violations) + " violations");
  for (const auto& e : r.examples) o.detail += "\n    " + e;
  if (o.pass) o.detail = std::to_string(r.cases) + " cases";
  return o;
}

Outcome unifier_suite() { return report_outcome(props::unifier_properties(20240611, 4000), 10000); }

Outcome overwrite_suite() { return report_outcome(props::overwrite_laws(7, 1000), 1000); }

Outcome lf_preservation() {
  const LoadResult lr = load_lexicon_paths({lexicon_dir});
  if (!lr.ok()) return {false, "fixtures do not load"};
  return report_outcome(props::lf_preservation(lr.lexicon, 99, 1000), 1000);
}

Outcome lexicon_round_trip() {
  Outcome o;
  // The whole fixture set, then each monolingual file on its own. Sign files
  // refer to entries in other files and only load together with them.
  std::vector<fs::path> sources{lexicon_dir};
  for (const char* lang : {"en", "fr", "de", "nl"}) sources.push_back(fs::path(lexicon_dir) / (std::string(lang) + ".lex"));
  for (const auto& src : sources) {
    const LoadResult first = load_lexicon_paths({src});
    o.require(first.ok(), src.string() + " does not load");
    const std::string text = serialize(first.lexicon);
    const LoadResult second = load_lexicon(text, "serialized");
    o.require(second.ok(), src.string() + ": serialized text does not load");
    o.require(serialize(second.lexicon) == text, src.string() + ": serialization is not a fixpoint");
    const auto& a = first.lexicon.entries();
    const auto& b = second.lexicon.entries();
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = struct_equal(fs_encoding::entry_fs(a[i]), fs_encoding::entry_fs(b[i]));
    o.require(same, src.string() + ": entries differ after reload");
  }
  const Run ok = cli({"validate"});
  o.require(ok.status == 0 && ok.out.empty(), "validate on fixtures: exit " + std::to_string(ok.status) + " " + ok.out);
  const std::vector<std::pair<std::string, std::string>> corrupt = {
      {"dangling_ref.lex", "DANGLING_REF"}, {"unknown_lf.lex", "UNKNOWN_LF"}, {"merged_base_missing.lex", "MERGED_BASE_MISSING"}};
  for (const auto& [file, code] : corrupt) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run_cli({"validate", "--lexicon", corrupt_dir + "/" + file}, out, err);
    const std::string printed = out.str();
    o.require(status == 1, file + ": exit " + std::to_string(status));
    o.require(printed.rfind("ERROR " + code + " ", 0) == 0 && std::count(printed.begin(), printed.end(), '\n') == 1,
              file + ": output was '" + printed + "'");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"pipeline reproduction", pipeline_reproduction},
      {"German variant", german_variant},
      {"literal contrast", literal_contrast},
      {"compound divergence", compound_divergence},
      {"support verb", support_verb},
      {"overgenerality measurement", overgenerality},
      {"qualia precision", qualia_precision},
      {"unifier property suite", unifier_suite},
      {"overwrite laws", overwrite_suite},
      {"LF preservation", lf_preservation},
      {"lexicon round trip", lexicon_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
