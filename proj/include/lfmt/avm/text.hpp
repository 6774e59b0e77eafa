// Textual form of feature structures.
//
//   value   := tag | tag '=' body | body
//   body    := '[' sort? (FEATURE ':' value)* ']'
//            | '{' (value (',' value)*)? '}'
//            | atom ('@' sort)?
//   tag     := '#' digits
//   atom    := bare word | "quoted string"
//
// Complex nodes list features in name order. A node reached by more than one
// path is tagged: `#n=body` at its first occurrence and `#n` afterwards. A bare
// first occurrence of a tag denotes an empty node of sort top.
#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lfmt/avm/feature_structure.hpp"

namespace lfmt {

namespace detail {

inline bool is_bare_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || c == '_' || c == '-' || c == '.' || c == '/' || c == ':' || c == '\'' || u >= 0x80;
}

inline bool needs_quotes(std::string_view atom) {
  if (atom.empty() || atom.back() == ':') return true;
  for (char c : atom) {
    if (!is_bare_char(c)) return true;
  }
  return false;
}

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

class AvmRenderer {
 public:
  explicit AvmRenderer(const FeatureStructure& fs) : pool_(fs.pool()), indegree_(pool_.size(), 0), tag_(pool_.size(), 0) {
    std::vector<bool> seen(pool_.size(), false);
    std::vector<std::uint32_t> stack{fs.root()};
    while (!stack.empty()) {
      const std::uint32_t n = stack.back();
      stack.pop_back();
      if (seen[n]) continue;
      seen[n] = true;
      for (const auto& f : pool_[n].features) {
        ++indegree_[f.second];
        stack.push_back(f.second);
      }
      for (std::uint32_t m : pool_[n].members) {
        ++indegree_[m];
        stack.push_back(m);
      }
    }
  }

  void render(std::uint32_t n, std::string& out) {
    if (indegree_[n] > 1) {
      if (tag_[n] != 0) {
        out += "#" + std::to_string(tag_[n]);
        return;
      }
      tag_[n] = ++next_tag_;
      out += "#" + std::to_string(tag_[n]) + "=";
    }
    const FsNode& node = pool_[n];
    switch (node.kind) {
      case NodeKind::atomic:
        out += needs_quotes(node.atom) ? quote(node.atom) : node.atom;
        if (node.sort != SortHierarchy::top) out += "@" + node.sort;
        break;
      case NodeKind::set:
        out += "{";
        for (std::size_t i = 0; i < node.members.size(); ++i) {
          if (i != 0) out += ", ";
          render(node.members[i], out);
        }
        out += "}";
        break;
      case NodeKind::complex:
        out += "[" + node.sort;
        for (const auto& [name, target] : node.features) {
          out += " " + name + ": ";
          render(target, out);
        }
        out += "]";
        break;
    }
  }

 private:
  const NodePool& pool_;
  std::vector<int> indegree_;
  std::vector<int> tag_;
  int next_tag_ = 0;
};

class AvmParser {
 public:
  explicit AvmParser(std::string_view text) : text_(text) {}

  FeatureStructure parse() {
    const FsBuilder::Ref root = value(false);
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return builder_.build(root);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw StructureError("AVM text, offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string bare() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_bare_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a word");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string quoted() {
    expect('"');
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out.push_back(text_[pos_++]);
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  FsBuilder::Ref value(bool in_set) {
    skip_ws();
    if (peek('#')) {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
      if (start == pos_) fail("expected tag number");
      const int tag = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (pos_ < text_.size() && text_[pos_] == '=') {
        ++pos_;
        if (tags_.count(tag) != 0) fail("tag #" + std::to_string(tag) + " defined twice");
        pending_.insert(tag);
        const FsBuilder::Ref r = body(in_set);
        pending_.erase(tag);
        tags_.emplace(tag, r);
        return r;
      }
      if (pending_.count(tag) != 0) fail("tag #" + std::to_string(tag) + " refers to itself");
      if (auto it = tags_.find(tag); it != tags_.end()) return it->second;
      const FsBuilder::Ref r = builder_.complex();
      tags_.emplace(tag, r);
      return r;
    }
    return body(in_set);
  }

  FsBuilder::Ref body(bool in_set) {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '[') {
      ++pos_;
      std::string sort(SortHierarchy::top);
      std::vector<std::pair<std::string, FsBuilder::Ref>> feats;
      skip_ws();
      if (!peek(']')) {
        std::string word = bare();
        if (word.back() != ':') {
          sort = word;
        } else {
          feats.emplace_back(word.substr(0, word.size() - 1), value(false));
        }
      }
      while (!peek(']')) {
        std::string word = bare();
        if (word.back() != ':') fail("expected FEATURE:");
        feats.emplace_back(word.substr(0, word.size() - 1), value(false));
      }
      ++pos_;
      const FsBuilder::Ref r = builder_.complex(sort);
      for (auto& [name, v] : feats) builder_.add_feature(r, name, v);
      return r;
    }
    if (text_[pos_] == '{') {
      if (in_set) fail("a set cannot be a member of a set");
      ++pos_;
      const FsBuilder::Ref r = builder_.set();
      if (!peek('}')) {
        builder_.add_member(r, value(true));
        while (peek(',')) {
          ++pos_;
          builder_.add_member(r, value(true));
        }
      }
      expect('}');
      return r;
    }
    std::string atom = text_[pos_] == '"' ? quoted() : bare();
    std::string sort(SortHierarchy::top);
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      sort = bare();
    }
    return builder_.atom(std::move(atom), std::move(sort));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  FsBuilder builder_;
  std::map<int, FsBuilder::Ref> tags_;
  std::set<int> pending_;
};

}  // namespace detail

/// Debug rendering used by traces and golden files.
inline std::string render_avm(const FeatureStructure& fs) {
  detail::AvmRenderer r(fs);
  std::string out;
  r.render(fs.root(), out);
  return out;
}

/// Parses the textual form; throws StructureError on malformed input.
inline FeatureStructure parse_avm(std::string_view text) {
  detail::AvmParser p(text);
  return p.parse();
}

}  // namespace lfmt
