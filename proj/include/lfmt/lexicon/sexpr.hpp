// Reader for the parenthesized lexicon syntax.
#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lfmt/diagnostics.hpp"

namespace lfmt {

struct SExpr {
  enum class Kind { symbol, string, list };

  Kind kind = Kind::list;
  std::string text;
  std::vector<SExpr> items;
  SourceLocation loc;

  bool is_list() const { return kind == Kind::list; }
  bool is_symbol() const { return kind == Kind::symbol; }
  bool is_string() const { return kind == Kind::string; }
  bool is_atom() const { return kind != Kind::list; }

  /// Symbol at the head of a list, or empty.
  std::string_view head() const {
    if (!is_list() || items.empty() || !items.front().is_symbol()) return {};
    return items.front().text;
  }
};

struct SExprReadResult {
  std::vector<SExpr> forms;
  std::optional<Diagnostic> error;
};

namespace detail {

class SExprReader {
 public:
  SExprReader(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  SExprReadResult read_all() {
    SExprReadResult out;
    while (true) {
      skip_trivia();
      if (pos_ >= text_.size()) break;
      auto form = read();
      if (!form) {
        out.error = error_;
        break;
      }
      out.forms.push_back(std::move(*form));
    }
    return out;
  }

 private:
  SourceLocation here() const { return {file_, line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else {
        break;
      }
    }
  }

  std::optional<SExpr> fail(SourceLocation where, std::string message) {
    error_ = Diagnostic{Severity::error, std::string(codes::syntax), std::move(where), std::move(message)};
    return std::nullopt;
  }

  std::optional<SExpr> read() {
    skip_trivia();
    if (pos_ >= text_.size()) return fail(here(), "unexpected end of file");
    SExpr e;
    e.loc = here();
    const char c = text_[pos_];
    if (c == '(') {
      advance();
      while (true) {
        skip_trivia();
        if (pos_ >= text_.size()) return fail(e.loc, "unclosed '('");
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        auto item = read();
        if (!item) return std::nullopt;
        e.items.push_back(std::move(*item));
      }
      return e;
    }
    if (c == ')') return fail(here(), "unexpected ')'");
    if (c == '"') {
      e.kind = SExpr::Kind::string;
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
        if (text_[pos_] == '\n') return fail(e.loc, "unterminated string");
        e.text.push_back(text_[pos_]);
        advance();
      }
      if (pos_ >= text_.size()) return fail(e.loc, "unterminated string");
      advance();
      return e;
    }
    e.kind = SExpr::Kind::symbol;
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (d == '(' || d == ')' || d == '"' || d == ';' || std::isspace(static_cast<unsigned char>(d)) != 0) break;
      e.text.push_back(d);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Diagnostic error_;
};

}  // namespace detail

/// Reads every toplevel form. Reading stops at the first syntax error, which
/// is reported alongside the forms read before it.
inline SExprReadResult read_sexprs(std::string_view text, std::string file) {
  detail::SExprReader reader(text, std::move(file));
  return reader.read_all();
}

}  // namespace lfmt
