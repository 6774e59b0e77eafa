// Lexicon domain types: entries, collocate subentries, rules and signs.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lfmt/avm/feature_structure.hpp"
#include "lfmt/diagnostics.hpp"
#include "lfmt/semantics.hpp"

namespace lfmt {

enum class Category { N, A, V, Adv };

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::N: return "N";
    case Category::A: return "A";
    case Category::V: return "V";
    case Category::Adv: return "Adv";
  }
  return "?";
}

inline std::optional<Category> parse_category(std::string_view s) {
  if (s == "N") return Category::N;
  if (s == "A") return Category::A;
  if (s == "V") return Category::V;
  if (s == "Adv") return Category::Adv;
  return std::nullopt;
}

inline bool is_head_category(Category c) { return c == Category::N || c == Category::V; }
inline bool is_adjunct_category(Category c) { return c == Category::A || c == Category::Adv; }

/// Where a collocate sits relative to its base.
enum class Position { pre, post, support_verb, quantity };

inline std::string_view to_string(Position p) {
  switch (p) {
    case Position::pre: return "pre";
    case Position::post: return "post";
    case Position::support_verb: return "support-verb";
    case Position::quantity: return "quantity";
  }
  return "?";
}

inline std::optional<Position> parse_position(std::string_view s) {
  if (s == "pre" || s == "pre-head-adjunct") return Position::pre;
  if (s == "post" || s == "post-head-adjunct") return Position::post;
  if (s == "support-verb" || s == "support-verb-head") return Position::support_verb;
  if (s == "quantity" || s == "quantity-head") return Position::quantity;
  return std::nullopt;
}

/// Adjunct positions put the collocate in the adjunct daughter; head positions
/// make the collocate the head with the base as its complement.
inline bool is_adjunct_position(Position p) { return p == Position::pre || p == Position::post; }

enum class RuleKind { head_adjunct, head_complement };
enum class HeadSide { left, right };

inline std::string_view to_string(RuleKind k) { return k == RuleKind::head_adjunct ? "head-adjunct" : "head-complement"; }
inline std::string_view to_string(HeadSide s) { return s == HeadSide::left ? "head-left" : "head-right"; }

/// A binary phrase rule with the function words it may skip between its
/// daughters and the word it inserts when generating a given position.
struct PhraseRule {
  RuleKind kind = RuleKind::head_adjunct;
  HeadSide head = HeadSide::right;
  std::vector<std::string> skip;
  std::map<Position, std::string> insert;
  std::optional<std::string> lang;  // nullopt: applies to every language
  SourceLocation loc;

  bool skips(std::string_view token) const { return std::find(skip.begin(), skip.end(), token) != skip.end(); }
  bool applies_to(std::string_view language) const { return !lang || *lang == language; }
};

/// True iff a collocate in position `p` is built by rule `r`.
inline bool position_fits(Position p, const PhraseRule& r) {
  switch (p) {
    case Position::pre: return r.kind == RuleKind::head_adjunct && r.head == HeadSide::right;
    case Position::post: return r.kind == RuleKind::head_adjunct && r.head == HeadSide::left;
    case Position::support_verb:
    case Position::quantity: return r.kind == RuleKind::head_complement;
  }
  return false;
}

using Grammar = std::vector<PhraseRule>;

struct PathOverride {
  Path path;
  std::string value;
};

/// Partial entry listed in a base's COLLS zone: the collocate's meaning as a
/// single LF plus whatever overrides its super-entry in this collocation.
struct CollocateSubentry {
  std::string base_ref;
  std::string super_ref;
  LexicalFunction lf;
  Position position = Position::pre;
  std::optional<std::string> form;       // collocate surface in this collocation
  std::optional<std::string> base_form;  // base surface in this collocation
  std::vector<PathOverride> overrides;
  SourceLocation loc;

  SemIndex sem(Variable v = Variable{0}) const { return SemIndex(v, {Predication::lf(lf, v)}); }
};

struct MergedSignature {
  LexicalFunction lf;  // merged flag set
  std::string base_pred;
};

struct LexEntry {
  std::string id;
  std::string lang;
  std::string phon;
  Category cat = Category::N;
  std::optional<SemIndex> sem;  // absent for pure collocates
  std::vector<CollocateSubentry> colls;
  std::map<QualiaRole, std::string> qualia;
  std::optional<MergedSignature> merged;
  std::optional<Position> free_position;  // adjunct placement in literal use
  SourceLocation loc;

  /// Base predicate of a non-merged entry with free semantics.
  std::optional<std::string> base_pred() const {
    if (!sem) return std::nullopt;
    auto preds = sem->base_preds();
    if (preds.size() != 1) return std::nullopt;
    return preds.front();
  }
};

/// Language prefix of a qualified identifier (`en:smoker` -> `en`).
inline std::optional<std::string> id_language(std::string_view id) {
  const std::size_t colon = id.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == id.size()) return std::nullopt;
  return std::string(id.substr(0, colon));
}

/// A transfer unit pairing one source base predicate with one target base
/// predicate over a shared variable. Usable in both directions.
struct BilingualSign {
  std::string src_lang;
  std::string src_pred;
  std::string tgt_lang;
  std::string tgt_pred;
  SourceLocation loc;

  SemIndex src_skeleton(Variable v = Variable{0}) const { return SemIndex(v, {Predication::base(src_pred, v)}); }
  SemIndex tgt_skeleton(Variable v = Variable{0}) const { return SemIndex(v, {Predication::base(tgt_pred, v)}); }
};

/// An LF sign; well-formed only as the identity (both sides the same LF).
struct LfSign {
  std::string src;
  std::string tgt;
  SourceLocation loc;

  bool identity() const { return src == tgt; }
};

namespace fs_encoding {

/// Writes `sem` as `[sem_ind VAR: var REST: {...}]`, coindexing every
/// predication's INST with `var`.
inline FsBuilder::Ref build_sem(FsBuilder& b, const SemIndex& sem, FsBuilder::Ref var) {
  const FsBuilder::Ref node = b.complex("sem_ind");
  b.add_feature(node, "VAR", var);
  const FsBuilder::Ref rest = b.set();
  for (const auto& p : sem.rest()) {
    FsBuilder::Ref pr = 0;
    if (p.is_lf()) {
      pr = b.complex("lf_pred");
      b.add_feature(pr, "LF", b.atom(lf_text(p.function())));
    } else {
      pr = b.complex("pred");
      b.add_feature(pr, "RELN", b.atom(p.pred()));
    }
    b.add_feature(pr, "INST", var);
    b.add_member(rest, pr);
  }
  b.add_feature(node, "REST", rest);
  return node;
}

/// Reads a SEM_IND node back. Predications whose INST is not the VAR node are
/// rejected.
inline SemIndex read_sem(const FeatureStructure& sem_ind, Variable v = Variable{0}) {
  auto var = sem_ind.get("VAR");
  if (!var) throw CompositionError("SEM_IND without VAR");
  std::vector<Predication> rest;
  if (auto r = sem_ind.get("REST"); r && r->is_set()) {
    for (const auto& m : r->members()) {
      auto inst = m.get("INST");
      if (!inst || !inst->same_node(*var)) throw CompositionError("predication not over the index variable");
      if (auto lf = m.get("LF"); lf && lf->is_atomic()) {
        auto fn = parse_lf_text(lf->atom_value());
        if (!fn) throw CompositionError("malformed LF value '" + lf->atom_value() + "'");
        rest.push_back(Predication::lf(*fn, v));
      } else if (auto reln = m.get("RELN"); reln && reln->is_atomic()) {
        rest.push_back(Predication::base(reln->atom_value(), v));
      } else {
        throw CompositionError("predication without RELN or LF");
      }
    }
  }
  return SemIndex(v, std::move(rest));
}

inline void apply_overrides(FsBuilder& b, FsBuilder::Ref root, const std::vector<PathOverride>& overrides) {
  for (const auto& o : overrides) {
    if (o.path.empty()) throw StructureError("override with an empty path");
    const Path parent(o.path.begin(), o.path.end() - 1);
    const FsBuilder::Ref at = b.ensure_path(root, parent);
    if (b.feature(at, o.path.back())) throw StructureError("override of '" + o.path.back() + "' clashes with the subentry");
    b.add_feature(at, o.path.back(), b.atom(o.value));
  }
}

/// The subentry as it appears in a COLLS zone. Its VAR is `var`, shared with
/// the base.
inline FsBuilder::Ref build_subentry(FsBuilder& b, const CollocateSubentry& sub, FsBuilder::Ref var) {
  const FsBuilder::Ref node = b.complex("collocate");
  b.add_feature(node, "SUPER", b.atom(sub.super_ref));
  b.add_feature(node, "POS", b.atom(std::string(to_string(sub.position))));
  if (sub.form) b.add_feature(node, "PHON", b.atom(*sub.form));
  b.add_feature(node, "SEM_IND", build_sem(b, sub.sem(), var));
  apply_overrides(b, node, sub.overrides);
  return node;
}

inline FeatureStructure subentry_fs(const CollocateSubentry& sub) {
  FsBuilder b;
  const FsBuilder::Ref var = b.complex("index");
  return b.build(build_subentry(b, sub, var));
}

/// Full AVM of an entry. COLLS is left out when `with_colls` is false: a word
/// used as a collocate carries no collocates zone of its own.
inline FsBuilder::Ref build_entry(FsBuilder& b, const LexEntry& e, bool with_colls) {
  const FsBuilder::Ref node = b.complex("word");
  b.add_feature(node, "ID", b.atom(e.id));
  b.add_feature(node, "PHON", b.atom(e.phon));
  b.add_feature(node, "CAT", b.atom(std::string(to_string(e.cat))));
  const FsBuilder::Ref var = b.complex("index");
  b.add_feature(node, "SEM_IND", build_sem(b, e.sem.value_or(SemIndex{}), var));
  if (e.merged) b.add_feature(node, "MERGED", b.atom(lf_text(e.merged->lf) + "(" + e.merged->base_pred + ")"));
  if (e.free_position) b.add_feature(node, "FREE_POS", b.atom(std::string(to_string(*e.free_position))));
  if (!e.qualia.empty()) {
    const FsBuilder::Ref q = b.complex("qualia");
    for (const auto& [role, value] : e.qualia) b.add_feature(q, std::string(to_string(role)), b.atom(value));
    b.add_feature(node, "QUALIA", q);
  }
  if (with_colls && !e.colls.empty()) {
    const FsBuilder::Ref colls = b.set();
    for (const auto& sub : e.colls) b.add_member(colls, build_subentry(b, sub, var));
    b.add_feature(node, "COLLS", colls);
  }
  return node;
}

inline FeatureStructure entry_fs(const LexEntry& e, bool with_colls = true) {
  FsBuilder b;
  return b.build(build_entry(b, e, with_colls));
}

}  // namespace fs_encoding

}  // namespace lfmt
