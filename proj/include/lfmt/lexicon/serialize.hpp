// Canonical lexicon file text. Loading the output reproduces the lexicon.
#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "lfmt/lexicon/lexicon.hpp"

namespace lfmt {

namespace detail {

inline std::string lex_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string lex_atom(std::string_view s) {
  if (s.empty()) return lex_string(s);
  for (char c : s) {
    if (c == '(' || c == ')' || c == '"' || c == ';' || c == '\\' || std::isspace(static_cast<unsigned char>(c)) != 0) {
      return lex_string(s);
    }
  }
  return std::string(s);
}

}  // namespace detail

inline std::string serialize_coll(const CollocateSubentry& c) {
  using detail::lex_atom;
  std::string out = "(coll (base " + lex_atom(c.base_ref) + ") (super " + lex_atom(c.super_ref) + ") (lf " +
                    lf_text(c.lf) + ") (pos " + std::string(to_string(c.position)) + ")";
  if (c.form) out += " (form " + detail::lex_string(*c.form) + ")";
  if (c.base_form) out += " (base-form " + detail::lex_string(*c.base_form) + ")";
  for (const auto& o : c.overrides) {
    out += " (set (";
    for (std::size_t i = 0; i < o.path.size(); ++i) out += (i ? " " : "") + o.path[i];
    out += ") " + lex_atom(o.value) + ")";
  }
  return out + ")\n";
}

inline std::string serialize(const Lexicon& lex) {
  using detail::lex_atom;
  using detail::lex_string;
  std::string out;
  if (!lex.sort_decls().empty()) {
    out += "(sorts";
    for (const auto& [sort, parents] : lex.sort_decls()) {
      out += " (" + sort;
      for (const auto& p : parents) out += " " + p;
      out += ")";
    }
    out += ")\n";
  }
  if (!lex.extra_lfs().empty()) {
    out += "(lfs";
    for (const auto& n : lex.extra_lfs()) out += " " + n;
    out += ")\n";
  }
  for (const auto& r : lex.rules()) {
    out += "(rule " + std::string(to_string(r.kind)) + " " + std::string(to_string(r.head)) + " (skip";
    for (const auto& w : r.skip) out += " " + lex_string(w);
    out += ")";
    for (const auto& [p, w] : r.insert) out += " (insert " + std::string(to_string(p)) + " " + lex_string(w) + ")";
    if (r.lang) out += " (lang " + lex_atom(*r.lang) + ")";
    out += ")\n";
  }
  for (const auto& e : lex.entries()) {
    out += "(entry (id " + lex_atom(e.id) + ") (phon " + lex_string(e.phon) + ") (cat " + std::string(to_string(e.cat)) + ")";
    if (e.merged) {
      out += " (merged " + lf_text(e.merged->lf.unmerged()) + " " + lex_atom(e.merged->base_pred) + ")";
    } else if (auto p = e.base_pred()) {
      out += " (sem (pred " + lex_atom(*p) + "))";
    }
    if (e.free_position) out += " (pos " + std::string(to_string(*e.free_position)) + ")";
    out += ")\n";
  }
  for (const auto& e : lex.entries()) {
    for (const auto& c : e.colls) out += serialize_coll(c);
  }
  for (const auto& c : lex.unattached()) out += serialize_coll(c);
  auto qualia = [&](const std::string& id, const std::map<QualiaRole, std::string>& roles) {
    out += "(qualia (id " + lex_atom(id) + ")";
    for (const auto& [role, value] : roles) out += " (" + std::string(to_string(role)) + " " + lex_atom(value) + ")";
    out += ")\n";
  };
  for (const auto& e : lex.entries()) {
    if (!e.qualia.empty()) qualia(e.id, e.qualia);
  }
  for (const auto& [id, roles] : lex.unattached_qualia()) qualia(id, roles);
  for (const auto& s : lex.signs()) {
    out += "(bi (src " + lex_atom(s.src_lang) + " " + lex_atom(s.src_pred) + ") (tgt " + lex_atom(s.tgt_lang) + " " +
           lex_atom(s.tgt_pred) + "))\n";
  }
  for (const auto& s : lex.lf_signs()) {
    out += "(bi-lf " + s.src;
    if (!s.identity()) out += " " + s.tgt;
    out += ")\n";
  }
  return out;
}

}  // namespace lfmt
