// Lexicon files: loading, cross-reference resolution and validation.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "lfmt/diagnostics.hpp"
#include "lfmt/lexicon/lexicon.hpp"
#include "lfmt/lexicon/sexpr.hpp"

namespace lfmt {

struct LoadResult {
  Lexicon lexicon;
  DiagnosticList diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

inline DiagnosticList validate(const Lexicon& lex);

namespace detail {

// Clauses of a form, grouped by head symbol, in source order.
class Clauses {
 public:
  Clauses(const SExpr& form, std::size_t first, DiagnosticList& diags) : form_(form), diags_(diags) {
    for (std::size_t i = first; i < form.items.size(); ++i) {
      const SExpr& c = form.items[i];
      if (c.head().empty()) {
        error(codes::bad_value, c.loc, "expected a (field ...) clause");
        continue;
      }
      by_head_[std::string(c.head())].push_back(&c);
    }
  }

  bool ok() const { return ok_; }

  /// Reports UNKNOWN_FIELD for every clause head outside `known`.
  void only(std::initializer_list<std::string_view> known) {
    for (const auto& [head, list] : by_head_) {
      if (std::find(known.begin(), known.end(), head) != known.end()) continue;
      for (const SExpr* c : list) error(codes::unknown_field, c->loc, "unknown field '" + head + "'");
    }
  }

  const std::vector<const SExpr*>& all(std::string_view head) const {
    static const std::vector<const SExpr*> none;
    auto it = by_head_.find(std::string(head));
    return it == by_head_.end() ? none : it->second;
  }

  /// The clause `head`, at most once.
  const SExpr* optional(std::string_view head) {
    const auto& list = all(head);
    if (list.empty()) return nullptr;
    if (list.size() > 1) error(codes::bad_value, list[1]->loc, "field '" + std::string(head) + "' given twice");
    return list.front();
  }

  const SExpr* required(std::string_view head) {
    const SExpr* c = optional(head);
    if (c == nullptr) error(codes::missing_field, form_.loc, "missing field '" + std::string(head) + "'");
    return c;
  }

  /// The single atom argument of `(head value)`.
  std::optional<std::string> atom(const SExpr* c) {
    if (c == nullptr) return std::nullopt;
    if (c->items.size() != 2 || !c->items[1].is_atom()) {
      error(codes::bad_value, c->loc, "field '" + std::string(c->head()) + "' takes one value");
      return std::nullopt;
    }
    return c->items[1].text;
  }

  void error(std::string_view code, const SourceLocation& where, std::string message) {
    diags_.push_back({Severity::error, std::string(code), where, std::move(message)});
    ok_ = false;
  }

 private:
  const SExpr& form_;
  DiagnosticList& diags_;
  std::map<std::string, std::vector<const SExpr*>> by_head_;
  bool ok_ = true;
};

}  // namespace detail

/// Accumulates lexicon sources; cross-file references resolve in finish().
class LexiconLoader {
 public:
  void add_source(std::string_view text, const std::string& file) {
    SExprReadResult r = read_sexprs(text, file);
    for (auto& f : r.forms) forms_.push_back(std::move(f));
    if (r.error) diags_.push_back(*r.error);
  }

  /// Reads a file, or every `*.lex` file of a directory in name order.
  void add_path(const std::filesystem::path& path) {
    std::error_code ec;
    if (std::filesystem::is_directory(path, ec)) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(path, ec)) {
        if (e.is_regular_file() && e.path().extension() == ".lex") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) add_file(f);
      return;
    }
    add_file(path);
  }

  LoadResult finish() {
    LoadResult out;
    Lexicon& lex = out.lexicon;
    // Sorts and LF declarations first, wherever they appear.
    for (const SExpr& f : forms_) {
      if (f.head() == "sorts") load_sorts(lex, f);
      if (f.head() == "lfs") load_lfs(lex, f);
    }
    std::vector<CollocateSubentry> colls;
    std::vector<std::tuple<std::string, std::map<QualiaRole, std::string>, SourceLocation>> qualia;
    for (const SExpr& f : forms_) {
      const std::string_view head = f.head();
      if (head == "sorts" || head == "lfs") continue;
      if (head == "entry") {
        load_entry(lex, f);
      } else if (head == "coll") {
        if (auto c = load_coll(lex, f)) colls.push_back(std::move(*c));
      } else if (head == "colls") {
        error(codes::nested_colls, f.loc, "a COLLS zone belongs inside no form; list collocates with (coll ...)");
      } else if (head == "qualia") {
        load_qualia(f, qualia);
      } else if (head == "rule") {
        load_rule(lex, f);
      } else if (head == "bi") {
        load_sign(lex, f);
      } else if (head == "bi-lf") {
        load_lf_sign(lex, f);
      } else {
        error(codes::unknown_form, f.loc, head.empty() ? "expected a (form ...)" : "unknown form '" + std::string(head) + "'");
      }
    }
    lex.reindex();
    for (auto& c : colls) {
      auto it = lex.by_id_.find(c.base_ref);
      if (it == lex.by_id_.end()) {
        lex.unattached_.push_back(std::move(c));
      } else {
        lex.entries_[it->second].colls.push_back(std::move(c));
      }
    }
    for (auto& [id, roles, loc] : qualia) {
      auto it = lex.by_id_.find(id);
      if (it == lex.by_id_.end()) {
        lex.unattached_qualia_.emplace_back(id, std::move(roles));
        lex.unattached_qualia_locs_.push_back(loc);
        continue;
      }
      auto& target = lex.entries_[it->second].qualia;
      for (auto& [role, value] : roles) {
        if (!target.emplace(role, value).second) {
          error(codes::bad_value, loc, "qualia role " + std::string(to_string(role)) + " of '" + id + "' given twice");
        }
      }
    }
    out.diagnostics = std::move(diags_);
    for (auto& d : validate(lex)) out.diagnostics.push_back(std::move(d));
    return out;
  }

 private:
  void add_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      diags_.push_back({Severity::error, std::string(codes::io_error), {path.string(), 0, 0}, "cannot read lexicon file"});
      return;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    add_source(buf.str(), path.string());
  }

  void error(std::string_view code, const SourceLocation& where, std::string message) {
    diags_.push_back({Severity::error, std::string(code), where, std::move(message)});
  }

  void warning(std::string_view code, const SourceLocation& where, std::string message) {
    diags_.push_back({Severity::warning, std::string(code), where, std::move(message)});
  }

  void load_sorts(Lexicon& lex, const SExpr& f) {
    for (std::size_t i = 1; i < f.items.size(); ++i) {
      const SExpr& d = f.items[i];
      const bool symbols = d.is_list() && !d.items.empty() &&
                           std::all_of(d.items.begin(), d.items.end(), [](const SExpr& x) { return x.is_symbol(); });
      if (!symbols) {
        error(codes::bad_value, d.loc, "expected (sort parent...)");
        continue;
      }
      std::vector<std::string> parents;
      bool known = true;
      for (std::size_t j = 1; j < d.items.size(); ++j) {
        if (!lex.sorts_.contains(d.items[j].text)) {
          error(codes::unknown_sort, d.items[j].loc, "unknown parent sort '" + d.items[j].text + "'");
          known = false;
        }
        parents.push_back(d.items[j].text);
      }
      if (!known) continue;
      try {
        lex.sorts_.declare(d.items[0].text, parents);
        lex.sort_decls_.emplace_back(d.items[0].text, parents);
      } catch (const StructureError& e) {
        error(codes::sort_cycle, d.loc, e.what());
      }
    }
  }

  void load_lfs(Lexicon& lex, const SExpr& f) {
    for (std::size_t i = 1; i < f.items.size(); ++i) {
      const SExpr& n = f.items[i];
      if (!n.is_symbol() || !valid_lf_name(n.text)) {
        error(codes::bad_lf_name, n.loc, "'" + n.text + "' is not a lexical function name");
        continue;
      }
      if (lex.lfs_.declare(n.text)) lex.extra_lfs_.push_back(n.text);
    }
  }

  // Parses an LF reference. Reports and returns nullopt on failure.
  std::optional<LexicalFunction> lf_ref(const Lexicon& lex, const SExpr& x) {
    auto fn = x.is_atom() ? parse_lf_text(x.text) : std::nullopt;
    if (!fn) {
      error(codes::bad_lf_name, x.loc, "'" + x.text + "' is not a lexical function");
      return std::nullopt;
    }
    if (!lex.lfs_.contains(fn->name)) {
      error(codes::unknown_lf, x.loc, "lexical function '" + fn->name + "' is not registered");
      return std::nullopt;
    }
    return fn;
  }

  std::optional<std::string> qualified_id(detail::Clauses& c, const SExpr* clause) {
    auto id = c.atom(clause);
    if (id && !id_language(*id)) {
      c.error(codes::bad_value, clause->loc, "identifier '" + *id + "' lacks a language prefix");
      return std::nullopt;
    }
    return id;
  }

  void load_entry(Lexicon& lex, const SExpr& f) {
    detail::Clauses c(f, 1, diags_);
    c.only({"id", "phon", "cat", "sem", "merged", "pos", "coll", "colls"});
    for (std::string_view nested : {"coll", "colls"}) {
      for (const SExpr* n : c.all(nested)) c.error(codes::nested_colls, n->loc, "collocates are listed with toplevel (coll ...) forms");
    }
    LexEntry e;
    e.loc = f.loc;
    auto id = qualified_id(c, c.required("id"));
    auto phon = c.atom(c.required("phon"));
    std::optional<Category> cat;
    if (auto text = c.atom(c.required("cat"))) {
      cat = parse_category(*text);
      if (!cat) c.error(codes::bad_value, f.loc, "unknown category '" + *text + "'");
    }
    if (!id || !phon || !cat) return;
    e.id = *id;
    e.lang = *id_language(*id);
    e.phon = *phon;
    e.cat = *cat;

    const SExpr* sem = c.optional("sem");
    const SExpr* merged = c.optional("merged");
    const Variable v{0};
    if (sem != nullptr && merged != nullptr) c.error(codes::bad_value, f.loc, "an entry has either (sem ...) or (merged ...)");
    if (sem != nullptr && merged == nullptr) {
      const bool one_pred = sem->items.size() == 2 && sem->items[1].head() == "pred" && sem->items[1].items.size() == 2 &&
                            sem->items[1].items[1].is_atom();
      if (one_pred) {
        e.sem = SemIndex(v, {Predication::base(sem->items[1].items[1].text, v)});
      } else {
        c.error(codes::bad_value, sem->loc, "(sem ...) takes exactly one (pred name)");
      }
    }
    if (merged != nullptr && sem == nullptr) {
      if (merged->items.size() != 3 || !merged->items[2].is_atom()) {
        c.error(codes::bad_value, merged->loc, "(merged ...) takes a lexical function and a base predicate");
      } else if (auto fn = lf_ref(lex, merged->items[1])) {
        fn->merged = true;
        e.merged = MergedSignature{*fn, merged->items[2].text};
        e.sem = SemIndex(v, {Predication::base(merged->items[2].text, v), Predication::lf(fn->unmerged(), v)});
      }
    }
    if (auto pos = c.atom(c.optional("pos"))) {
      auto p = parse_position(*pos);
      if (!p || !is_adjunct_position(*p)) {
        c.error(codes::bad_value, f.loc, "free position must be pre or post, not '" + *pos + "'");
      } else {
        e.free_position = p;
      }
    }
    if (lex.by_id_.count(e.id) != 0) {
      error(codes::duplicate_id, f.loc, "duplicate entry id '" + e.id + "'");
      return;
    }
    lex.by_id_.emplace(e.id, lex.entries_.size());
    lex.entries_.push_back(std::move(e));
  }

  std::optional<CollocateSubentry> load_coll(const Lexicon& lex, const SExpr& f) {
    detail::Clauses c(f, 1, diags_);
    c.only({"base", "super", "lf", "pos", "form", "base-form", "set", "coll", "colls"});
    for (std::string_view nested : {"coll", "colls"}) {
      for (const SExpr* n : c.all(nested)) c.error(codes::nested_colls, n->loc, "a collocate subentry carries no collocates");
    }
    CollocateSubentry s;
    s.loc = f.loc;
    auto base = qualified_id(c, c.required("base"));
    auto super = qualified_id(c, c.required("super"));
    std::vector<const SExpr*> lfs;
    for (const SExpr* l : c.all("lf")) {
      for (std::size_t i = 1; i < l->items.size(); ++i) lfs.push_back(&l->items[i]);
    }
    std::optional<LexicalFunction> fn;
    if (lfs.size() != 1) {
      c.error(codes::coll_lf_count, f.loc, "a collocate subentry has exactly one lexical function, not " + std::to_string(lfs.size()));
    } else if ((fn = lf_ref(lex, *lfs.front())) && fn->merged) {
      c.error(codes::bad_value, lfs.front()->loc, "a collocate's lexical function is not merged");
    } else if (!fn) {
      return std::nullopt;
    }
    std::optional<Position> pos;
    if (auto text = c.atom(c.required("pos"))) {
      pos = parse_position(*text);
      if (!pos) c.error(codes::bad_value, f.loc, "unknown position '" + *text + "'");
    }
    s.form = c.atom(c.optional("form"));
    s.base_form = c.atom(c.optional("base-form"));
    for (const SExpr* o : c.all("set")) {
      const bool shaped = o->items.size() == 3 && o->items[1].is_list() && !o->items[1].items.empty() &&
                          o->items[2].is_atom() &&
                          std::all_of(o->items[1].items.begin(), o->items[1].items.end(),
                                      [](const SExpr& x) { return x.is_symbol(); });
      if (!shaped) {
        c.error(codes::bad_override, o->loc, "expected (set (FEATURE...) value)");
        continue;
      }
      PathOverride po;
      for (const auto& x : o->items[1].items) po.path.push_back(x.text);
      po.value = o->items[2].text;
      const std::string& first = po.path.front();
      if (first == "COLLS") {
        c.error(codes::nested_colls, o->loc, "a collocate subentry carries no collocates");
      } else if (first == "SUPER" || first == "SEM_IND" || first == "POS" || first == "PHON" ||
                 std::any_of(po.path.begin(), po.path.end(), [](const std::string& p) { return is_set_feature(p); })) {
        c.error(codes::bad_override, o->loc, "feature " + first + " is fixed by the subentry itself");
      } else {
        s.overrides.push_back(std::move(po));
      }
    }
    if (!c.ok() || !base || !super || !pos) return std::nullopt;
    s.base_ref = *base;
    s.super_ref = *super;
    s.lf = *fn;
    s.position = *pos;
    try {
      fs_encoding::subentry_fs(s);
    } catch (const StructureError& e) {
      error(codes::bad_override, f.loc, e.what());
      return std::nullopt;
    }
    return s;
  }

  void load_qualia(const SExpr& f,
                   std::vector<std::tuple<std::string, std::map<QualiaRole, std::string>, SourceLocation>>& out) {
    detail::Clauses c(f, 1, diags_);
    auto id = qualified_id(c, c.required("id"));
    std::map<QualiaRole, std::string> roles;
    for (std::size_t i = 1; i < f.items.size(); ++i) {
      const SExpr& r = f.items[i];
      if (r.head().empty() || r.head() == "id") continue;
      auto role = parse_qualia_role(r.head());
      if (!role) {
        c.error(codes::unknown_qualia_role, r.loc, "unknown qualia role '" + std::string(r.head()) + "'");
        continue;
      }
      auto value = c.atom(&r);
      if (value && !roles.emplace(*role, *value).second) c.error(codes::bad_value, r.loc, "qualia role given twice");
    }
    if (id && c.ok()) out.emplace_back(*id, std::move(roles), f.loc);
  }

  void load_rule(Lexicon& lex, const SExpr& f) {
    PhraseRule r;
    r.loc = f.loc;
    if (f.items.size() < 3 || !f.items[1].is_symbol() || !f.items[2].is_symbol()) {
      error(codes::bad_rule, f.loc, "expected (rule KIND SIDE ...)");
      return;
    }
    const std::string& kind = f.items[1].text;
    const std::string& side = f.items[2].text;
    bool ok = true;
    if (kind == "head-adjunct") {
      r.kind = RuleKind::head_adjunct;
    } else if (kind == "head-complement") {
      r.kind = RuleKind::head_complement;
    } else {
      error(codes::bad_rule, f.items[1].loc, "unknown rule kind '" + kind + "'");
      ok = false;
    }
    if (side == "head-left") {
      r.head = HeadSide::left;
    } else if (side == "head-right") {
      r.head = HeadSide::right;
    } else {
      error(codes::bad_rule, f.items[2].loc, "unknown head side '" + side + "'");
      ok = false;
    }
    for (std::size_t i = 3; i < f.items.size(); ++i) {
      const SExpr& c = f.items[i];
      const std::string_view head = c.head();
      const bool atoms = c.is_list() && std::all_of(c.items.begin(), c.items.end(), [](const SExpr& x) { return x.is_atom(); });
      if (head == "skip" && atoms) {
        for (std::size_t j = 1; j < c.items.size(); ++j) r.skip.push_back(c.items[j].text);
      } else if (head == "insert" && atoms && c.items.size() == 3) {
        auto p = parse_position(c.items[1].text);
        if (!p || r.insert.count(*p) != 0) {
          error(codes::bad_rule, c.loc, "bad or repeated insert position '" + c.items[1].text + "'");
          ok = false;
        } else {
          r.insert.emplace(*p, c.items[2].text);
        }
      } else if (head == "lang" && atoms && c.items.size() == 2 && !r.lang) {
        r.lang = c.items[1].text;
      } else {
        error(codes::bad_rule, c.loc, "unexpected rule clause");
        ok = false;
      }
    }
    if (!ok) return;
    for (const auto& [p, word] : r.insert) {
      if (!position_fits(p, r) || is_adjunct_position(p)) {
        error(codes::bad_rule, f.loc, "rule cannot insert a word for position " + std::string(to_string(p)));
        return;
      }
    }
    lex.rules_.push_back(std::move(r));
  }

  void load_sign(Lexicon& lex, const SExpr& f) {
    detail::Clauses c(f, 1, diags_);
    c.only({"src", "tgt"});
    auto side = [&](const SExpr* s) -> std::optional<std::pair<std::string, std::string>> {
      if (s == nullptr) return std::nullopt;
      if (s->items.size() != 3 || !s->items[1].is_atom() || !s->items[2].is_atom()) {
        c.error(codes::bad_value, s->loc, "expected (" + std::string(s->head()) + " LANG pred)");
        return std::nullopt;
      }
      return std::make_pair(s->items[1].text, s->items[2].text);
    };
    auto src = side(c.required("src"));
    auto tgt = side(c.required("tgt"));
    if (!src || !tgt || !c.ok()) return;
    BilingualSign s{src->first, src->second, tgt->first, tgt->second, f.loc};
    const bool duplicate = std::any_of(lex.signs_.begin(), lex.signs_.end(), [&](const BilingualSign& o) {
      return (o.src_lang == s.src_lang && o.src_pred == s.src_pred && o.tgt_lang == s.tgt_lang && o.tgt_pred == s.tgt_pred) ||
             (o.src_lang == s.tgt_lang && o.src_pred == s.tgt_pred && o.tgt_lang == s.src_lang && o.tgt_pred == s.src_pred);
    });
    if (duplicate) {
      warning(codes::duplicate_sign, f.loc, "sign " + s.src_lang + ":" + s.src_pred + " <-> " + s.tgt_lang + ":" +
                                                s.tgt_pred + " repeats an earlier one");
      return;
    }
    lex.signs_.push_back(std::move(s));
  }

  void load_lf_sign(Lexicon& lex, const SExpr& f) {
    if (f.items.size() < 2 || f.items.size() > 3) {
      error(codes::bad_value, f.loc, "expected (bi-lf F) or (bi-lf F G)");
      return;
    }
    std::vector<std::string> names;
    for (std::size_t i = 1; i < f.items.size(); ++i) {
      const SExpr& n = f.items[i];
      if (!n.is_symbol() || !valid_lf_name(n.text)) {
        error(codes::bad_lf_name, n.loc, "'" + n.text + "' is not a lexical function name");
        return;
      }
      if (!lex.lfs_.contains(n.text)) {
        error(codes::unknown_lf, n.loc, "lexical function '" + n.text + "' is not registered");
        return;
      }
      names.push_back(n.text);
    }
    lex.lf_signs_.push_back({names.front(), names.back(), f.loc});
  }

  std::vector<SExpr> forms_;
  DiagnosticList diags_;
};

/// Checks cross-references and well-formedness of a loaded lexicon. Pure.
inline DiagnosticList validate(const Lexicon& lex) {
  DiagnosticList out;
  auto report = [&](Severity sev, std::string_view code, const SourceLocation& where, std::string message) {
    out.push_back({sev, std::string(code), where, std::move(message)});
  };
  for (const LexEntry& e : lex.entries()) {
    if (e.merged && lex.by_pred(e.lang, e.merged->base_pred).empty()) {
      report(Severity::error, codes::merged_base_missing, e.loc,
             "'" + e.id + "' lexicalizes " + lf_text(e.merged->lf) + "(" + e.merged->base_pred + ") but no " + e.lang +
                 " entry has predicate " + e.merged->base_pred);
    }
    for (const CollocateSubentry& sub : e.colls) {
      const LexEntry* super = lex.find(sub.super_ref);
      if (super == nullptr) {
        report(Severity::error, codes::dangling_ref, sub.loc, "super-entry '" + sub.super_ref + "' does not exist");
        continue;
      }
      if (super->lang != e.lang) {
        report(Severity::error, codes::lang_mismatch, sub.loc, "'" + super->id + "' cannot collocate with '" + e.id + "'");
        continue;
      }
      const bool fits = is_adjunct_position(sub.position) ? is_adjunct_category(super->cat) : is_head_category(super->cat);
      if (!fits) {
        report(Severity::error, codes::category_mismatch, sub.loc,
               "position " + std::string(to_string(sub.position)) + " does not admit category " +
                   std::string(to_string(super->cat)));
        continue;
      }
      if (sub.lf.subscript && e.qualia.count(*sub.lf.subscript) == 0) {
        report(Severity::warning, codes::qualia_role_undeclared, sub.loc,
               "'" + e.id + "' declares no " + std::string(to_string(*sub.lf.subscript)) + " quale");
      }
      try {
        resolve_collocate(lex, e, sub);
      } catch (const std::exception& ex) {
        report(Severity::error, codes::bad_override, sub.loc, ex.what());
      }
    }
  }
  for (const CollocateSubentry& sub : lex.unattached()) {
    report(Severity::error, codes::dangling_ref, sub.loc, "base entry '" + sub.base_ref + "' does not exist");
  }
  for (std::size_t i = 0; i < lex.unattached_qualia().size(); ++i) {
    report(Severity::error, codes::dangling_ref, lex.unattached_qualia_locs()[i],
           "qualia for unknown entry '" + lex.unattached_qualia()[i].first + "'");
  }
  for (const BilingualSign& s : lex.signs()) {
    for (const auto& [lang, pred] : {std::pair{s.src_lang, s.src_pred}, std::pair{s.tgt_lang, s.tgt_pred}}) {
      if (lex.by_pred(lang, pred).empty()) {
        report(Severity::error, codes::sign_endpoint_missing, s.loc, "no " + lang + " entry has predicate " + pred);
      }
    }
  }
  for (const LfSign& s : lex.lf_signs()) {
    if (!s.identity()) {
      report(Severity::error, codes::lf_sign_not_identity, s.loc, "lexical functions cross languages unchanged, not " + s.src + " to " + s.tgt);
    }
  }
  return out;
}

inline LoadResult load_lexicon(std::string_view text, const std::string& file = "<input>") {
  LexiconLoader loader;
  loader.add_source(text, file);
  return loader.finish();
}

/// Loads files and directories left to right into one lexicon.
inline LoadResult load_lexicon_paths(const std::vector<std::filesystem::path>& paths) {
  LexiconLoader loader;
  for (const auto& p : paths) loader.add_path(p);
  return loader.finish();
}

}  // namespace lfmt
