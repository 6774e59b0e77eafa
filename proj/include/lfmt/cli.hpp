// The `lfmt` command line: translate, analyze, generate, validate.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lfmt/analysis.hpp"
#include "lfmt/avm/text.hpp"
#include "lfmt/errors.hpp"
#include "lfmt/generation.hpp"
#include "lfmt/lexicon/loader.hpp"
#include "lfmt/transfer.hpp"

namespace lfmt {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int parse_failure = 1;  // TokenUnknown, NoParse; validation errors
inline constexpr int missing_sign = 2;
inline constexpr int realization = 3;  // RealizationGap, NoBaseEntry
inline constexpr int usage = 64;
inline constexpr int bad_lexicon = 65;
inline constexpr int io = 66;
}  // namespace exit_code

inline constexpr const char* lexicon_path_env = "LF_TRANSFER_LEXICON_PATH";

inline int exit_code_for(PipelineErrorKind k) {
  switch (k) {
    case PipelineErrorKind::token_unknown:
    case PipelineErrorKind::no_parse: return exit_code::parse_failure;
    case PipelineErrorKind::missing_sign: return exit_code::missing_sign;
    case PipelineErrorKind::realization_gap:
    case PipelineErrorKind::no_base_entry: return exit_code::realization;
  }
  return exit_code::parse_failure;
}

namespace detail {

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

// --lexicon arguments, else the colon-separated environment path.
inline std::vector<std::filesystem::path> lexicon_paths(const std::vector<std::string>& given) {
  std::vector<std::filesystem::path> out(given.begin(), given.end());
  if (!out.empty()) return out;
  const char* env = std::getenv(lexicon_path_env);
  if (env == nullptr) return out;
  std::string rest(env);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const std::size_t colon = rest.find(':', start);
    const std::string part = rest.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    if (!part.empty()) out.emplace_back(part);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  return out;
}

// Loads for a pipeline command. Returns 0 or the exit status to stop with.
inline int load_for_pipeline(const std::vector<std::string>& given, LoadResult& result, std::ostream& err) {
  const auto paths = lexicon_paths(given);
  if (paths.empty()) {
    err << "error: no lexicon given; use --lexicon or set " << lexicon_path_env << "\n";
    return exit_code::usage;
  }
  result = load_lexicon_paths(paths);
  for (const auto& d : result.diagnostics) err << render(d) << "\n";
  if (has_code(result.diagnostics, codes::io_error)) return exit_code::io;
  if (!result.ok()) return exit_code::bad_lexicon;
  return exit_code::ok;
}

struct TranslateOptions {
  std::string from;
  std::string to;
  bool trace = false;
  bool all_readings = false;
};

// Transfers and realizes one reading, printing the trace stages if asked.
inline int translate_reading(const Reading& reading, const std::vector<std::string>& tokens, const TranslateOptions& opt,
                             const Lexicon& lex, std::ostream& out, std::ostream& err) {
  if (opt.trace) {
    out << "1: " << join_tokens(tokens) << "\n";
    out << "2: " << render_functional(reading.sem) << "\n";
    err << "analysis: " << render_reading(reading) << "\n";
    err << "avm: " << render_avm(reading.structure) << "\n";
  }
  try {
    const SemIndex target = transfer(reading.sem, opt.from, opt.to, lex);
    if (opt.trace) {
      out << "3: " << render_functional(target) << "\n";
      err << "transfer: " << render_functional(target) << "\n";
    }
    const auto realizations = generate(target, opt.to, lex);
    if (opt.trace) {
      out << "4: " << realizations.front().surface << "\n";
      for (const auto& r : realizations) err << "generation: " << render_realization(r) << "\n";
    }
    for (const auto& r : realizations) out << r.surface << "\n";
    return exit_code::ok;
  } catch (const PipelineError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace detail

/// Runs one command line (without the program name). Returns the exit status.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collocation-aware translation through lexical functions", "lfmt"};
  app.require_subcommand(1);

  std::vector<std::string> lexicons;
  std::vector<std::string> tokens;
  detail::TranslateOptions topt;
  std::string lang;
  std::string sem_text;

  auto* translate_cmd = app.add_subcommand("translate", "Translate a phrase, printing ranked target realizations");
  translate_cmd->add_option("--from", topt.from, "Source language")->required();
  translate_cmd->add_option("--to", topt.to, "Target language")->required();
  translate_cmd->add_option("--lexicon", lexicons, "Lexicon file or directory (repeatable)")->allow_extra_args(false);
  translate_cmd->add_flag("--trace", topt.trace, "Print the numbered pipeline stages");
  translate_cmd->add_flag("--all-readings", topt.all_readings, "Translate every source reading, not only the best");
  translate_cmd->add_option("phrase", tokens, "Phrase tokens")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Print every reading of a phrase");
  analyze_cmd->add_option("--lang", lang, "Language")->required();
  analyze_cmd->add_option("--lexicon", lexicons, "Lexicon file or directory (repeatable)")->allow_extra_args(false);
  analyze_cmd->add_option("phrase", tokens, "Phrase tokens")->required();

  auto* generate_cmd = app.add_subcommand("generate", "Realize a semantic index such as \"smoker(x),Magn(x)\"");
  generate_cmd->add_option("--lang", lang, "Language")->required();
  generate_cmd->add_option("--sem", sem_text, "Predications over one variable")->required();
  generate_cmd->add_option("--lexicon", lexicons, "Lexicon file or directory (repeatable)")->allow_extra_args(false);

  auto* validate_cmd = app.add_subcommand("validate", "Check lexicon files and print diagnostics");
  validate_cmd->add_option("--lexicon", lexicons, "Lexicon file or directory (repeatable)")->allow_extra_args(false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? exit_code::ok : exit_code::usage;
  }

  if (validate_cmd->parsed()) {
    const auto paths = detail::lexicon_paths(lexicons);
    if (paths.empty()) {
      err << "error: no lexicon given; use --lexicon or set " << lexicon_path_env << "\n";
      return exit_code::usage;
    }
    const LoadResult result = load_lexicon_paths(paths);
    for (const auto& d : result.diagnostics) out << render(d) << "\n";
    if (has_code(result.diagnostics, codes::io_error)) return exit_code::io;
    return result.ok() ? exit_code::ok : exit_code::parse_failure;
  }

  LoadResult loaded;
  if (int status = detail::load_for_pipeline(lexicons, loaded, err); status != exit_code::ok) return status;
  const Lexicon& lex = loaded.lexicon;

  if (generate_cmd->parsed()) {
    SemIndex sem;
    try {
      sem = parse_sem(sem_text, lex.lfs());
    } catch (const SemParseError& e) {
      err << "error: " << e.what() << "\n";
      return exit_code::usage;
    }
    try {
      for (const auto& r : generate(sem, lang, lex)) out << r.surface << "\n";
    } catch (const PipelineError& e) {
      err << "error: " << e.what() << "\n";
      return exit_code_for(e.kind());
    }
    return exit_code::ok;
  }

  std::vector<Reading> readings;
  try {
    readings = analyze(tokens, analyze_cmd->parsed() ? lang : topt.from, lex);
  } catch (const PipelineError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }

  if (analyze_cmd->parsed()) {
    for (const auto& r : readings) out << render_reading(r) << "\n";
    return exit_code::ok;
  }

  if (!topt.all_readings) return detail::translate_reading(readings.front(), tokens, topt, lex, out, err);
  int first_failure = exit_code::ok;
  bool any_ok = false;
  for (const auto& r : readings) {
    out << render_reading(r) << "\n";
    const int status = detail::translate_reading(r, tokens, topt, lex, out, err);
    if (status == exit_code::ok) {
      any_ok = true;
    } else if (first_failure == exit_code::ok) {
      first_failure = status;
    }
  }
  return any_ok ? exit_code::ok : first_failure;
}

}  // namespace lfmt
