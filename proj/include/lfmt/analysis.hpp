// Source analysis: binary phrase rules, the collocation principle, readings.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "lfmt/avm/text.hpp"
#include "lfmt/avm/unify.hpp"
#include "lfmt/errors.hpp"
#include "lfmt/lexicon/lexicon.hpp"
#include "lfmt/semantics.hpp"

namespace lfmt {

enum class Construction { collocational, literal };

inline std::string_view to_string(Construction c) {
  return c == Construction::collocational ? "collocational" : "literal";
}

/// One input token and the entry it was analyzed as; skipped function words
/// have no entry.
struct Span {
  std::string surface;
  std::optional<std::string> entry;
};

struct Reading {
  SemIndex sem;
  Construction construction = Construction::literal;
  std::optional<LexicalFunction> lf;  // the licensing LF of a collocational reading
  std::vector<Span> spans;
  FeatureStructure structure;  // the phrase AVM of the derivation
};

/// `[collocational Magn] smoker(x),Magn(x)` or `[literal] heavy(x),smoker(x)`.
inline std::string render_reading(const Reading& r) {
  std::string out = "[" + std::string(to_string(r.construction));
  if (r.lf) out += " " + lf_text(*r.lf);
  return out + "] " + render_sem(r.sem);
}

/// Binds the dependent's variable to the head's and unions the restrictions.
inline SemIndex compose_sem(const SemIndex& head_sem, const SemIndex& dep_sem) { return sem_union(head_sem, dep_sem); }

/// A subentry of a base's COLLS zone that licenses a dependent word.
struct Licence {
  const CollocateSubentry* sub = nullptr;
  FeatureStructure collocate;  // the resolved collocate the dependent is compatible with
};

namespace detail {

// The entry as it occurs with surface `surface`.
inline FeatureStructure occurrence_fs(const LexEntry& e, std::string_view surface) {
  LexEntry copy = e;
  copy.phon = std::string(surface);
  copy.colls.clear();
  return fs_encoding::entry_fs(copy, false);
}

// Every subentry of `base` that licenses `partner` in a rule of kind `kind`.
// Empty surfaces match any surface variant.
inline std::vector<Licence> licences(const Lexicon& lex, const LexEntry& base, std::string_view base_surface,
                                     const LexEntry& partner, std::string_view partner_surface, RuleKind kind,
                                     const PhraseRule* rule) {
  std::vector<Licence> out;
  for (const auto& sub : base.colls) {
    const bool kind_ok = rule != nullptr ? position_fits(sub.position, *rule)
                                         : is_adjunct_position(sub.position) == (kind == RuleKind::head_adjunct);
    if (!kind_ok || sub.super_ref != partner.id) continue;
    if (!base_surface.empty() && sub.base_form.value_or(base.phon) != base_surface) continue;
    const ResolvedCollocate resolved = resolve_collocate(lex, base, sub);
    const std::string surface = partner_surface.empty() ? resolved.entry.phon : std::string(partner_surface);
    if (unify(resolved.structure, occurrence_fs(partner, surface), lex.sorts())) out.push_back({&sub, resolved.structure});
  }
  return out;
}

}  // namespace detail

/// The collocation principle. For head-adjunct the head is the base and must
/// list the dependent in its COLLS; for head-complement the complement is the
/// base and must list the head. Returns the licensing LF.
inline std::optional<LexicalFunction> license(const Lexicon& lex, const LexEntry& head, const LexEntry& dependent,
                                              RuleKind kind) {
  const LexEntry& base = kind == RuleKind::head_adjunct ? head : dependent;
  const LexEntry& partner = kind == RuleKind::head_adjunct ? dependent : head;
  auto found = detail::licences(lex, base, {}, partner, {}, kind, nullptr);
  if (found.empty()) return std::nullopt;
  return found.front().sub->lf;
}

/// A token with one entry it may be an occurrence of.
struct LexicalItem {
  const LexEntry* entry = nullptr;
  std::string surface;
};

/// Entries `token` may realize in `lang`: citation forms, collocate surface
/// variants and base surface variants. Ordered by entry id.
inline std::vector<LexicalItem> lexical_items(const Lexicon& lex, std::string_view lang, std::string_view token) {
  std::set<std::string> ids;
  for (const LexEntry* e : lex.by_phon(lang, token)) ids.insert(e->id);
  for (const LexEntry& e : lex.entries()) {
    if (e.lang != lang) continue;
    for (const auto& sub : e.colls) {
      if (sub.form == token) ids.insert(sub.super_ref);
      if (sub.base_form == token) ids.insert(e.id);
    }
  }
  std::vector<LexicalItem> out;
  for (const auto& id : ids) {
    if (const LexEntry* e = lex.find(id)) out.push_back({e, std::string(token)});
  }
  return out;
}

namespace detail {

inline bool categories_fit(RuleKind kind, Category head, Category dep) {
  if (kind == RuleKind::head_adjunct) {
    return (head == Category::N && dep == Category::A) || (head == Category::V && dep == Category::Adv);
  }
  return is_head_category(head) && dep == Category::N;
}

// Phrase AVM with the head daughter's index shared by the dependent.
inline FeatureStructure phrase_fs(const Lexicon& lex, Construction c, RuleKind kind, const FeatureStructure& head,
                                  const FeatureStructure& dep) {
  FsBuilder pair;
  const auto root = pair.complex();
  pair.add_feature(root, "HEAD_DTR", pair.import(head));
  pair.add_feature(root, "DEP", pair.import(dep));
  FsBuilder link;
  const auto lroot = link.complex();
  const auto var = link.complex("index");
  link.ensure_path(lroot, {"HEAD_DTR", "SEM_IND"});
  link.ensure_path(lroot, {"DEP", "SEM_IND"});
  link.add_feature(*link.feature(*link.feature(lroot, "HEAD_DTR"), "SEM_IND"), "VAR", var);
  link.add_feature(*link.feature(*link.feature(lroot, "DEP"), "SEM_IND"), "VAR", var);
  auto linked = unify(pair.build(root), link.build(lroot), lex.sorts());
  if (!linked) throw CompositionError("daughters do not share an index");

  FsBuilder b;
  const auto joined = b.import(*linked);
  const auto phrase = b.complex(c == Construction::collocational ? "collocation" : "phrase");
  b.add_feature(phrase, "HEAD_DTR", *b.feature(joined, "HEAD_DTR"));
  const auto dtrs = b.set();
  b.add_member(dtrs, *b.feature(joined, "DEP"));
  b.add_feature(phrase, kind == RuleKind::head_adjunct ? "ADJ_DTRS" : "COMP_DTRS", dtrs);
  return b.build(phrase);
}

inline std::vector<Span> spans_for(const std::vector<std::string>& tokens, const LexicalItem* left,
                                   const LexicalItem* right) {
  std::vector<Span> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Span s{tokens[i], std::nullopt};
    if (i == 0 && left != nullptr) s.entry = left->entry->id;
    if (i + 1 == tokens.size() && right != nullptr) s.entry = right->entry->id;
    out.push_back(std::move(s));
  }
  return out;
}

inline void derive(const Lexicon& lex, const PhraseRule& rule, const std::vector<std::string>& tokens,
                   const LexicalItem& left, const LexicalItem& right, std::vector<Reading>& out) {
  const bool head_left = rule.head == HeadSide::left;
  const LexicalItem& head = head_left ? left : right;
  const LexicalItem& dep = head_left ? right : left;
  if (!categories_fit(rule.kind, head.entry->cat, dep.entry->cat)) return;
  const auto spans = spans_for(tokens, &left, &right);

  // Collocational readings: the base is the head of a head-adjunct phrase and
  // the complement of a head-complement phrase.
  const LexicalItem& base = rule.kind == RuleKind::head_adjunct ? head : dep;
  const LexicalItem& partner = rule.kind == RuleKind::head_adjunct ? dep : head;
  if (base.entry->sem && base.entry->base_pred()) {
    for (const auto& lic :
         licences(lex, *base.entry, base.surface, *partner.entry, partner.surface, rule.kind, &rule)) {
      Reading r;
      r.construction = Construction::collocational;
      r.lf = lic.sub->lf;
      r.sem = compose_sem(*base.entry->sem, lic.sub->sem());
      r.spans = spans;
      const FeatureStructure base_fs = fs_encoding::entry_fs(*base.entry, true);
      const FeatureStructure head_fs = &base == &head ? base_fs : lic.collocate;
      const FeatureStructure dep_fs = &base == &head ? lic.collocate : base_fs;
      r.structure = phrase_fs(lex, r.construction, rule.kind, head_fs, dep_fs);
      out.push_back(std::move(r));
    }
  }

  // Literal reading: both words in their free sense.
  if (!head.entry->sem || !dep.entry->sem || head.entry->merged || dep.entry->merged) return;
  if (rule.kind == RuleKind::head_adjunct) {
    const Position placed = head_left ? Position::post : Position::pre;
    if (dep.entry->free_position.value_or(Position::pre) != placed) return;
  }
  Reading r;
  r.construction = Construction::literal;
  r.sem = compose_sem(*head.entry->sem, *dep.entry->sem);
  r.spans = spans;
  r.structure = phrase_fs(lex, r.construction, rule.kind, occurrence_fs(*head.entry, head.surface),
                          occurrence_fs(*dep.entry, dep.surface));
  out.push_back(std::move(r));
}

inline void order_readings(std::vector<Reading>& readings) {
  auto key = [](const Reading& r) {
    return std::make_tuple(r.construction == Construction::collocational ? 0 : 1, render_sem(r.sem),
                           r.lf ? lf_text(*r.lf) : std::string());
  };
  std::stable_sort(readings.begin(), readings.end(), [&](const Reading& a, const Reading& b) { return key(a) < key(b); });
  readings.erase(std::unique(readings.begin(), readings.end(),
                             [&](const Reading& a, const Reading& b) { return key(a) == key(b); }),
                 readings.end());
}

}  // namespace detail

/// All readings of `tokens` in `lang`, collocational first, then by rendered
/// semantics. Throws PipelineError (TokenUnknown, NoParse).
inline std::vector<Reading> analyze(const std::vector<std::string>& tokens, std::string_view lang, const Lexicon& lex) {
  const Grammar grammar = lex.grammar(lang);
  if (tokens.empty()) throw PipelineError(PipelineErrorKind::no_parse, "empty phrase");
  std::vector<std::vector<LexicalItem>> items;
  for (const auto& t : tokens) {
    items.push_back(lexical_items(lex, lang, t));
    const bool skippable = std::any_of(grammar.begin(), grammar.end(), [&](const PhraseRule& r) { return r.skips(t); });
    if (items.back().empty() && !skippable) {
      throw PipelineError(PipelineErrorKind::token_unknown, "'" + t + "' has no " + std::string(lang) + " entry");
    }
  }

  std::vector<Reading> out;
  if (tokens.size() == 1) {
    for (const auto& item : items.front()) {
      const LexEntry& e = *item.entry;
      if (!e.sem) continue;
      Reading r;
      r.sem = *e.sem;
      if (e.merged) {
        r.construction = Construction::collocational;
        r.lf = e.merged->lf;
      }
      r.spans = detail::spans_for(tokens, &item, nullptr);
      r.structure = detail::occurrence_fs(e, item.surface);
      out.push_back(std::move(r));
    }
  } else {
    for (const auto& rule : grammar) {
      const bool middle_skips =
          std::all_of(tokens.begin() + 1, tokens.end() - 1, [&](const std::string& t) { return rule.skips(t); });
      if (!middle_skips) continue;
      for (const auto& left : items.front()) {
        for (const auto& right : items.back()) detail::derive(lex, rule, tokens, left, right, out);
      }
    }
  }
  if (out.empty()) throw PipelineError(PipelineErrorKind::no_parse, "no rule of " + std::string(lang) + " covers the phrase");
  detail::order_readings(out);
  return out;
}

}  // namespace lfmt
