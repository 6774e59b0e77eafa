// Generation: merged, collocational and literal realization of a SemIndex.
#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "lfmt/errors.hpp"
#include "lfmt/lexicon/lexicon.hpp"
#include "lfmt/semantics.hpp"
#include "lfmt/transfer.hpp"

namespace lfmt {

/// In rank order: one word for base and LF, base plus collocates, free words.
enum class Strategy { merged, collocational, literal };

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::merged: return "merged";
    case Strategy::collocational: return "collocational";
    case Strategy::literal: return "literal";
  }
  return "?";
}

struct Realization {
  std::string surface;
  Strategy strategy = Strategy::literal;
  std::vector<LexicalFunction> lfs;  // LF values used, outermost first
  std::vector<std::string> entries;  // base or merged entry first
};

/// `"grand fumeur" [collocational Magn fr:fumeur fr:grand]`
inline std::string render_realization(const Realization& r) {
  std::string out = "\"" + r.surface + "\" [" + std::string(to_string(r.strategy));
  if (r.lfs.empty()) out += " -";
  for (const auto& fn : r.lfs) out += " " + lf_text(fn);
  for (const auto& id : r.entries) out += " " + id;
  return out + "]";
}

namespace detail {

inline std::string join_words(std::initializer_list<std::string_view> words) {
  std::string out;
  for (auto w : words) {
    if (w.empty()) continue;
    if (!out.empty()) out += " ";
    out += w;
  }
  return out;
}

inline std::string linearize(std::string_view base, std::string_view collocate, Position p, const PhraseRule& rule) {
  if (!position_fits(p, rule)) {
    throw std::invalid_argument("position " + std::string(to_string(p)) + " is not built by a " +
                                std::string(to_string(rule.kind)) + " " + std::string(to_string(rule.head)) + " rule");
  }
  switch (p) {
    case Position::pre: return join_words({collocate, base});
    case Position::post: return join_words({base, collocate});
    case Position::support_verb:
    case Position::quantity: break;
  }
  auto ins = rule.insert.find(p);
  const std::string_view word = ins == rule.insert.end() ? std::string_view() : std::string_view(ins->second);
  return rule.head == HeadSide::left ? join_words({collocate, word, base}) : join_words({base, word, collocate});
}

inline const PhraseRule* rule_for(const Grammar& grammar, Position p) {
  for (const auto& r : grammar) {
    if (position_fits(p, r)) return &r;
  }
  return nullptr;
}

struct Partial {
  std::string surface;
  bool bare = true;  // still the base word alone
  std::vector<LexicalFunction> lfs;
  std::vector<std::string> ids;
  std::vector<std::tuple<int, int>> rank;
};

inline auto realization_key(const Partial& p) { return std::make_tuple(p.rank, p.surface, p.ids); }

// Realizes every LF in `fns` as a collocate of `head`, the first LF of `fns`
// outermost. Empty when some LF has no realizable collocate.
inline std::vector<Partial> realize(const Lexicon& lex, const Grammar& grammar, const LexEntry& head,
                                    std::vector<LexicalFunction> fns) {
  std::stable_sort(fns.begin(), fns.end(), [&](const LexicalFunction& a, const LexicalFunction& b) {
    return std::make_tuple(lex.lfs().position(a.name), a) < std::make_tuple(lex.lfs().position(b.name), b);
  });
  std::vector<Partial> cur{Partial{head.phon, true, {}, {}, {}}};
  for (auto it = fns.rbegin(); it != fns.rend(); ++it) {
    std::vector<Partial> next;
    const auto collocates = apply_lf(lex, *it, head);
    for (const auto& part : cur) {
      for (const auto& c : collocates) {
        const PhraseRule* rule = rule_for(grammar, c.sub->position);
        if (rule == nullptr) continue;
        const std::string base = part.bare && c.sub->base_form ? *c.sub->base_form : part.surface;
        Partial p;
        p.surface = linearize(base, c.entry.phon, c.sub->position, *rule);
        p.bare = false;
        p.lfs = part.lfs;
        p.lfs.insert(p.lfs.begin(), c.sub->lf);
        p.ids = part.ids;
        p.ids.insert(p.ids.begin(), c.entry.id);
        p.rank = part.rank;
        const auto [exact, role, surface, id] = collocate_rank(*it, c);
        p.rank.insert(p.rank.begin(), std::make_tuple(exact, role));
        next.push_back(std::move(p));
      }
    }
    cur = std::move(next);
  }
  for (auto& p : cur) p.ids.insert(p.ids.begin(), head.id);
  return cur;
}

inline void append_ranked(std::vector<Partial> parts, Strategy s, std::vector<Realization>& out) {
  std::stable_sort(parts.begin(), parts.end(),
                   [](const Partial& a, const Partial& b) { return realization_key(a) < realization_key(b); });
  for (auto& p : parts) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Realization& r) {
      return r.strategy == s && r.surface == p.surface && r.entries == p.ids;
    });
    if (!seen) out.push_back({std::move(p.surface), s, std::move(p.lfs), std::move(p.ids)});
  }
}

inline std::vector<Realization> generate_literal(const SemIndex& sem, std::string_view lang, const Lexicon& lex) {
  const auto preds = sem.base_preds();
  std::vector<std::vector<const LexEntry*>> options;
  for (const auto& p : preds) {
    options.push_back(lex.by_pred(lang, p));
    if (options.back().empty()) {
      throw PipelineError(PipelineErrorKind::no_base_entry, "no " + std::string(lang) + " entry has predicate " + p);
    }
  }
  std::vector<Partial> parts;
  for (std::size_t h = 0; h < preds.size(); ++h) {
    for (const LexEntry* head : options[h]) {
      if (preds.size() > 1 && !is_head_category(head->cat)) continue;
      const Category wanted = head->cat == Category::N ? Category::A : Category::Adv;
      // Every combination of one modifier entry per remaining predicate.
      std::vector<std::vector<const LexEntry*>> combos{{}};
      for (std::size_t m = 0; m < preds.size(); ++m) {
        if (m == h) continue;
        std::vector<std::vector<const LexEntry*>> grown;
        for (const auto& combo : combos) {
          for (const LexEntry* mod : options[m]) {
            if (mod->cat != wanted) continue;
            grown.push_back(combo);
            grown.back().push_back(mod);
          }
        }
        combos = std::move(grown);
      }
      for (auto& combo : combos) {
        std::sort(combo.begin(), combo.end(), [](const LexEntry* a, const LexEntry* b) {
          return std::make_tuple(a->phon, a->id) < std::make_tuple(b->phon, b->id);
        });
        std::string pre;
        std::string post;
        Partial p;
        p.ids.push_back(head->id);
        for (const LexEntry* mod : combo) {
          std::string& side = mod->free_position.value_or(Position::pre) == Position::post ? post : pre;
          side = join_words({side, mod->phon});
          p.ids.push_back(mod->id);
        }
        p.surface = join_words({pre, head->phon, post});
        parts.push_back(std::move(p));
      }
    }
  }
  if (parts.empty()) {
    throw PipelineError(PipelineErrorKind::realization_gap,
                        render_sem(sem) + " has no literal " + std::string(lang) + " realization");
  }
  std::vector<Realization> out;
  append_ranked(std::move(parts), Strategy::literal, out);
  return out;
}

}  // namespace detail

/// Space-joined surface of `collocate` combined with `base` in `position`.
/// Throws std::invalid_argument when the rule does not build that position.
inline std::string realize_surface(const LexEntry& base, const LexEntry& collocate, Position position, const PhraseRule& rule,
                                   const std::optional<std::string>& base_form = std::nullopt) {
  return detail::linearize(base_form.value_or(base.phon), collocate.phon, position, rule);
}

/// Ranked realizations of `sem` in `lang`. Throws PipelineError (NoBaseEntry,
/// RealizationGap).
inline std::vector<Realization> generate(const SemIndex& sem, std::string_view lang, const Lexicon& lex) {
  const auto fns = sem.functions();
  if (fns.empty()) {
    if (sem.base_preds().empty()) throw PipelineError(PipelineErrorKind::no_base_entry, "nothing to realize");
    return detail::generate_literal(sem, lang, lex);
  }
  const auto preds = sem.base_preds();
  if (preds.size() != 1) {
    throw PipelineError(preds.empty() ? PipelineErrorKind::no_base_entry : PipelineErrorKind::realization_gap,
                        render_sem(sem) + " does not restrict exactly one base predicate");
  }
  const Grammar grammar = lex.grammar(lang);
  std::vector<Realization> out;

  std::vector<detail::Partial> merged;
  for (const auto& m : paraphrase_candidates(sem, lang, lex)) {
    std::vector<LexicalFunction> rest = fns;
    rest.erase(std::find(rest.begin(), rest.end(), m.function.function()));
    for (auto& p : detail::realize(lex, grammar, *m.entry, rest)) {
      p.lfs.push_back(m.entry->merged->lf);
      merged.push_back(std::move(p));
    }
  }
  detail::append_ranked(std::move(merged), Strategy::merged, out);

  const auto bases = lex.by_pred(lang, preds.front());
  std::vector<detail::Partial> colloc;
  for (const LexEntry* base : bases) {
    for (auto& p : detail::realize(lex, grammar, *base, fns)) colloc.push_back(std::move(p));
  }
  detail::append_ranked(std::move(colloc), Strategy::collocational, out);

  if (out.empty()) {
    if (bases.empty() && paraphrase_candidates(sem, lang, lex).empty()) {
      throw PipelineError(PipelineErrorKind::no_base_entry,
                          "no " + std::string(lang) + " entry has predicate " + preds.front());
    }
    throw PipelineError(PipelineErrorKind::realization_gap,
                        render_functional(sem) + " has no " + std::string(lang) + " realization");
  }
  return out;
}

}  // namespace lfmt
