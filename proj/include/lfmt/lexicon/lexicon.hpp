// The compiled lexicon: entries with COLLS zones, grammar rules and signs.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "lfmt/avm/sort_hierarchy.hpp"
#include "lfmt/avm/unify.hpp"
#include "lfmt/lexicon/overwrite.hpp"
#include "lfmt/lexicon/types.hpp"
#include "lfmt/semantics.hpp"

namespace lfmt {

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LexiconLoader;

/// Immutable after loading; safe to share across threads.
class Lexicon {
 public:
  Lexicon() : sorts_(SortHierarchy::standard()), lfs_(LfRegistry::standard()) {}

  const SortHierarchy& sorts() const { return sorts_; }
  const LfRegistry& lfs() const { return lfs_; }
  const std::vector<LexEntry>& entries() const { return entries_; }
  const std::vector<PhraseRule>& rules() const { return rules_; }
  const std::vector<BilingualSign>& signs() const { return signs_; }
  const std::vector<LfSign>& lf_signs() const { return lf_signs_; }
  const std::vector<std::string>& extra_lfs() const { return extra_lfs_; }
  /// Sort declarations made by lexicon files, as written.
  const std::vector<std::pair<std::string, std::vector<std::string>>>& sort_decls() const { return sort_decls_; }

  /// Subentries whose base did not resolve; reported by validation.
  const std::vector<CollocateSubentry>& unattached() const { return unattached_; }
  /// Qualia declarations whose entry did not resolve, with the roles they set.
  const std::vector<std::pair<std::string, std::map<QualiaRole, std::string>>>& unattached_qualia() const {
    return unattached_qualia_;
  }
  const std::vector<SourceLocation>& unattached_qualia_locs() const { return unattached_qualia_locs_; }

  const LexEntry* find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &entries_[it->second];
  }

  /// Entries of `lang` whose citation surface is `phon`.
  std::vector<const LexEntry*> by_phon(std::string_view lang, std::string_view phon) const {
    return lookup(by_phon_, lang, phon);
  }

  /// Non-merged entries of `lang` whose free semantics is the base predicate `pred`.
  std::vector<const LexEntry*> by_pred(std::string_view lang, std::string_view pred) const {
    return lookup(by_pred_, lang, pred);
  }

  /// Merged entries of `lang` lexicalizing //fn applied to `pred`.
  std::vector<const LexEntry*> merged_for(std::string_view lang, const LexicalFunction& fn, std::string_view pred) const {
    std::vector<const LexEntry*> out;
    for (const LexEntry* e : lookup(by_merged_base_, lang, pred)) {
      if (lf_matches(fn.unmerged(), e->merged->lf.unmerged())) out.push_back(e);
    }
    return out;
  }

  /// Grammar rules applicable to `lang`, in declaration order.
  Grammar grammar(std::string_view lang) const {
    Grammar out;
    for (const auto& r : rules_) {
      if (r.applies_to(lang)) out.push_back(r);
    }
    return out;
  }

  /// Target predicate for `pred` between the two languages, using signs in
  /// either direction. Several candidates resolve to the smallest target.
  std::optional<std::string> translate_pred(std::string_view src_lang, std::string_view tgt_lang,
                                            std::string_view pred) const {
    std::optional<std::string> best;
    for (const auto& s : signs_) {
      std::optional<std::string> cand;
      if (s.src_lang == src_lang && s.tgt_lang == tgt_lang && s.src_pred == pred) cand = s.tgt_pred;
      if (s.tgt_lang == src_lang && s.src_lang == tgt_lang && s.tgt_pred == pred) cand = s.src_pred;
      if (cand && (!best || *cand < *best)) best = cand;
    }
    return best;
  }

  /// True iff an identity sign lets `fn` cross between languages untouched.
  bool has_lf_identity(std::string_view fn_name) const {
    return std::any_of(lf_signs_.begin(), lf_signs_.end(),
                       [&](const LfSign& s) { return s.identity() && s.src == fn_name; });
  }

  /// Base predicates of `lang` that appear in some entry.
  std::vector<std::string> preds_of(std::string_view lang) const {
    std::vector<std::string> out;
    for (const auto& [key, ids] : by_pred_) {
      if (key.first == lang) out.push_back(key.second);
    }
    return out;
  }

 private:
  friend class LexiconLoader;
  using Key = std::pair<std::string, std::string>;
  using Index = std::map<Key, std::vector<std::size_t>>;

  std::vector<const LexEntry*> lookup(const Index& index, std::string_view lang, std::string_view key) const {
    std::vector<const LexEntry*> out;
    auto it = index.find(Key(std::string(lang), std::string(key)));
    if (it == index.end()) return out;
    for (std::size_t i : it->second) out.push_back(&entries_[i]);
    std::sort(out.begin(), out.end(), [](const LexEntry* a, const LexEntry* b) { return a->id < b->id; });
    return out;
  }

  void reindex() {
    by_id_.clear();
    by_phon_.clear();
    by_pred_.clear();
    by_merged_base_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const LexEntry& e = entries_[i];
      by_id_.emplace(e.id, i);
      by_phon_[Key(e.lang, e.phon)].push_back(i);
      if (e.merged) {
        by_merged_base_[Key(e.lang, e.merged->base_pred)].push_back(i);
      } else if (auto p = e.base_pred()) {
        by_pred_[Key(e.lang, *p)].push_back(i);
      }
    }
  }

  SortHierarchy sorts_;
  LfRegistry lfs_;
  std::vector<std::string> extra_lfs_;
  std::vector<std::pair<std::string, std::vector<std::string>>> sort_decls_;
  std::vector<LexEntry> entries_;
  std::vector<PhraseRule> rules_;
  std::vector<BilingualSign> signs_;
  std::vector<LfSign> lf_signs_;
  std::vector<CollocateSubentry> unattached_;
  std::vector<std::pair<std::string, std::map<QualiaRole, std::string>>> unattached_qualia_;
  std::vector<SourceLocation> unattached_qualia_locs_;
  std::map<std::string, std::size_t> by_id_;
  Index by_phon_;
  Index by_pred_;
  Index by_merged_base_;
};

/// A collocate subentry completed by its super-entry.
struct ResolvedCollocate {
  LexEntry entry;              // surface, category and LF semantics of the collocate
  FeatureStructure structure;  // overwrite(super, subentry)
  const CollocateSubentry* sub = nullptr;
  const LexEntry* super = nullptr;
};

/// Overwrites the super-entry with the subentry and coindexes the result with
/// the base's index variable. Throws LexiconError on a dangling super_ref.
inline ResolvedCollocate resolve_collocate(const Lexicon& lex, const LexEntry& base, const CollocateSubentry& sub) {
  const LexEntry* super = lex.find(sub.super_ref);
  if (super == nullptr) throw LexiconError("collocate super-entry '" + sub.super_ref + "' does not resolve");
  FeatureStructure merged =
      default_overwrite(fs_encoding::entry_fs(*super, false), fs_encoding::subentry_fs(sub), lex.sorts());

  ResolvedCollocate out;
  out.structure = merged;
  out.sub = &sub;
  out.super = super;
  LexEntry& e = out.entry;
  e.id = super->id;
  e.lang = super->lang;
  e.phon = merged.get("PHON")->atom_value();
  const auto cat = parse_category(merged.get("CAT")->atom_value());
  if (!cat) throw LexiconError("collocate '" + super->id + "' has an unknown category after overwrite");
  e.cat = *cat;
  const Variable v = base.sem ? base.sem->var() : Variable{0};
  e.sem = fs_encoding::read_sem(*merged.get("SEM_IND"), v);
  e.loc = sub.loc;
  return out;
}

namespace detail {
// Ordering key for a collocate answering `query`: exact subscript matches
// first, then qualia role order, then surface.
inline auto collocate_rank(const LexicalFunction& query, const ResolvedCollocate& c) {
  const bool exact = c.sub->lf.subscript == query.subscript;
  const int role = c.sub->lf.subscript ? static_cast<int>(*c.sub->lf.subscript) : -1;
  return std::make_tuple(exact ? 0 : 1, role, c.entry.phon, c.entry.id);
}
}  // namespace detail

/// Collocates listed at `base` whose LF matches `fn`, resolved and ordered.
inline std::vector<ResolvedCollocate> apply_lf(const Lexicon& lex, const LexicalFunction& fn, const LexEntry& base) {
  if (!lex.lfs().contains(fn.name)) throw UnknownLfError("unregistered lexical function '" + fn.name + "'");
  std::vector<ResolvedCollocate> out;
  for (const auto& sub : base.colls) {
    if (lf_matches(fn, sub.lf)) out.push_back(resolve_collocate(lex, base, sub));
  }
  std::sort(out.begin(), out.end(), [&](const ResolvedCollocate& a, const ResolvedCollocate& b) {
    return detail::collocate_rank(fn, a) < detail::collocate_rank(fn, b);
  });
  return out;
}

}  // namespace lfmt
