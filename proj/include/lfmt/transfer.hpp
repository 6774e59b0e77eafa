// Transfer: base predications through bilingual signs, LFs unchanged.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lfmt/errors.hpp"
#include "lfmt/lexicon/lexicon.hpp"
#include "lfmt/semantics.hpp"

namespace lfmt {

/// Maps `sem` from `src` to `tgt`. Within one language every predicate maps
/// to itself. Throws PipelineError (MissingSign).
inline SemIndex transfer(const SemIndex& sem, std::string_view src, std::string_view tgt, const Lexicon& lex) {
  std::vector<Predication> rest;
  for (const auto& p : sem.rest()) {
    if (p.is_lf()) {
      const LexicalFunction& fn = p.function();
      if (src != tgt && !lex.has_lf_identity(fn.name)) {
        throw PipelineError(PipelineErrorKind::missing_sign, "no sign carries " + fn.name + " from " + std::string(src) +
                                                                 " to " + std::string(tgt));
      }
      rest.push_back(p);
      continue;
    }
    if (src == tgt) {
      rest.push_back(p);
      continue;
    }
    auto target = lex.translate_pred(src, tgt, p.pred());
    if (!target) {
      throw PipelineError(PipelineErrorKind::missing_sign,
                          "no sign for " + p.pred() + " from " + std::string(src) + " to " + std::string(tgt));
    }
    rest.push_back(Predication::base(*target, p.arg));
  }
  return SemIndex(sem.var(), std::move(rest));
}

/// A single word lexicalizing a base predication together with an LF on it.
struct MergedRealization {
  const LexEntry* entry = nullptr;
  Predication base;
  Predication function;
};

/// Merged entries of `lang` consuming some {P(x), F(x)} pair of `sem`, ordered
/// by entry id within each pair.
inline std::vector<MergedRealization> paraphrase_candidates(const SemIndex& sem, std::string_view lang, const Lexicon& lex) {
  std::vector<MergedRealization> out;
  for (const auto& b : sem.rest()) {
    if (b.is_lf()) continue;
    for (const auto& f : sem.rest()) {
      if (!f.is_lf() || f.function().merged) continue;
      for (const LexEntry* e : lex.merged_for(lang, f.function(), b.pred())) out.push_back({e, b, f});
    }
  }
  return out;
}

/// The pair {P(x), F(x)} a merged entry lexicalizes.
inline SemIndex unmerge(const LexEntry& merged, Variable v = Variable{0}) {
  if (!merged.merged) throw CompositionError("'" + merged.id + "' is not a merged lexicalization");
  return SemIndex(v, {Predication::base(merged.merged->base_pred, v), Predication::lf(merged.merged->lf.unmerged(), v)});
}

}  // namespace lfmt
