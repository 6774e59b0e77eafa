// Lexicon diagnostics: `LEVEL CODE file:line:col message`.
#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lfmt {

enum class Severity { error, warning };

struct SourceLocation {
  std::string file;
  int line = 0;
  int column = 0;
};

struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  SourceLocation where;
  std::string message;
};

using DiagnosticList = std::vector<Diagnostic>;

namespace codes {
inline constexpr std::string_view syntax = "SYNTAX";
inline constexpr std::string_view io_error = "IO_ERROR";
inline constexpr std::string_view unknown_form = "UNKNOWN_FORM";
inline constexpr std::string_view unknown_field = "UNKNOWN_FIELD";
inline constexpr std::string_view missing_field = "MISSING_FIELD";
inline constexpr std::string_view bad_value = "BAD_VALUE";
inline constexpr std::string_view duplicate_id = "DUPLICATE_ID";
inline constexpr std::string_view dangling_ref = "DANGLING_REF";
inline constexpr std::string_view unknown_lf = "UNKNOWN_LF";
inline constexpr std::string_view bad_lf_name = "BAD_LF_NAME";
inline constexpr std::string_view coll_lf_count = "COLL_LF_COUNT";
inline constexpr std::string_view nested_colls = "NESTED_COLLS";
inline constexpr std::string_view category_mismatch = "CATEGORY_MISMATCH";
inline constexpr std::string_view lang_mismatch = "LANG_MISMATCH";
inline constexpr std::string_view merged_base_missing = "MERGED_BASE_MISSING";
inline constexpr std::string_view sign_endpoint_missing = "SIGN_ENDPOINT_MISSING";
inline constexpr std::string_view lf_sign_not_identity = "LF_SIGN_NOT_IDENTITY";
inline constexpr std::string_view duplicate_sign = "DUPLICATE_SIGN";
inline constexpr std::string_view unknown_qualia_role = "UNKNOWN_QUALIA_ROLE";
inline constexpr std::string_view qualia_role_undeclared = "QUALIA_ROLE_UNDECLARED";
inline constexpr std::string_view unknown_sort = "UNKNOWN_SORT";
inline constexpr std::string_view sort_cycle = "SORT_CYCLE";
inline constexpr std::string_view bad_rule = "BAD_RULE";
inline constexpr std::string_view bad_override = "BAD_OVERRIDE";
}  // namespace codes

inline std::string render(const Diagnostic& d) {
  std::string out = d.severity == Severity::error ? "ERROR " : "WARNING ";
  out += d.code;
  out += " ";
  out += d.where.file.empty() ? "<input>" : d.where.file;
  out += ":" + std::to_string(d.where.line) + ":" + std::to_string(d.where.column);
  out += " ";
  out += d.message;
  return out;
}

inline bool has_errors(const DiagnosticList& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
}

inline bool has_code(const DiagnosticList& diags, std::string_view code) {
  return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.code == code; });
}

}  // namespace lfmt
