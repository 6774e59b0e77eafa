// Semantic indices, predications and the lexical-function registry.
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lfmt {

struct Variable {
  std::uint32_t id = 0;
  auto operator<=>(const Variable&) const = default;
};

enum class QualiaRole { Const, Agent, Form, Telic };

inline constexpr std::array<QualiaRole, 4> all_qualia_roles = {QualiaRole::Const, QualiaRole::Agent, QualiaRole::Form,
                                                               QualiaRole::Telic};

inline std::string_view to_string(QualiaRole r) {
  switch (r) {
    case QualiaRole::Const: return "Const";
    case QualiaRole::Agent: return "Agent";
    case QualiaRole::Form: return "Form";
    case QualiaRole::Telic: return "Telic";
  }
  return "?";
}

inline std::optional<QualiaRole> parse_qualia_role(std::string_view s) {
  for (QualiaRole r : all_qualia_roles) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

/// An LF name with an optional qualia subscript; `merged` marks the //F form
/// whose value lexicalizes the LF together with its argument.
struct LexicalFunction {
  std::string name;
  std::optional<QualiaRole> subscript;
  bool merged = false;

  auto operator<=>(const LexicalFunction&) const = default;

  LexicalFunction unmerged() const { return {name, subscript, false}; }
};

/// Subscript matching: a plain query matches every subscript of its name, a
/// subscripted query only the identical subscript.
inline bool lf_matches(const LexicalFunction& query, const LexicalFunction& value) {
  if (query.name != value.name || query.merged != value.merged) return false;
  return !query.subscript || query.subscript == value.subscript;
}

class UnknownLfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Declared LF names in declaration order. Declaration order is the order in
/// which generation stacks several collocates on one base.
class LfRegistry {
 public:
  static LfRegistry standard() {
    LfRegistry r;
    r.declare("Magn", "intensifier");
    r.declare("Oper", "support verb");
    r.declare("Bon", "standard praise or approval");
    r.declare("Mult", "collective or aggregate");
    return r;
  }

  /// Returns false when the name was already declared.
  bool declare(const std::string& name, std::string doc = {}) {
    if (contains(name)) return false;
    names_.push_back(name);
    docs_[name] = std::move(doc);
    return true;
  }

  bool contains(std::string_view name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
  }

  std::size_t position(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw UnknownLfError("unregistered lexical function '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - names_.begin());
  }

  const std::vector<std::string>& names() const { return names_; }
  const std::string& doc(const std::string& name) const { return docs_.at(name); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::string> docs_;
};

/// A valid LF name starts with a letter and contains no '_' (the subscript
/// separator).
inline bool valid_lf_name(std::string_view name) {
  if (name.empty() || std::isalpha(static_cast<unsigned char>(name.front())) == 0) return false;
  return std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

/// `[//]Name[_Role]`, without consulting a registry.
inline std::string lf_text(const LexicalFunction& fn) {
  std::string out = fn.merged ? "//" : "";
  out += fn.name;
  if (fn.subscript) {
    out += "_";
    out += to_string(*fn.subscript);
  }
  return out;
}

/// Parses `[//]Name[_Role]` syntactically; nullopt on malformed text.
inline std::optional<LexicalFunction> parse_lf_text(std::string_view text) {
  LexicalFunction fn;
  if (text.starts_with("//")) {
    fn.merged = true;
    text.remove_prefix(2);
  }
  const std::size_t us = text.find('_');
  if (us != std::string_view::npos) {
    auto role = parse_qualia_role(text.substr(us + 1));
    if (!role) return std::nullopt;
    fn.subscript = role;
    text = text.substr(0, us);
  }
  if (!valid_lf_name(text)) return std::nullopt;
  fn.name = std::string(text);
  return fn;
}

inline std::string render_lf(const LfRegistry& registry, const LexicalFunction& fn) {
  if (!registry.contains(fn.name)) throw UnknownLfError("unregistered lexical function '" + fn.name + "'");
  return lf_text(fn);
}

inline LexicalFunction parse_lf(const LfRegistry& registry, std::string_view text) {
  auto fn = parse_lf_text(text);
  if (!fn) throw UnknownLfError("malformed lexical function '" + std::string(text) + "'");
  if (!registry.contains(fn->name)) throw UnknownLfError("unregistered lexical function '" + fn->name + "'");
  return *fn;
}

/// A one-place restriction: either a base predicate or an LF over `arg`.
struct Predication {
  std::variant<std::string, LexicalFunction> relation;
  Variable arg;

  static Predication base(std::string pred, Variable v) { return {std::move(pred), v}; }
  static Predication lf(LexicalFunction fn, Variable v) { return {std::move(fn), v}; }

  bool is_lf() const { return std::holds_alternative<LexicalFunction>(relation); }
  const std::string& pred() const { return std::get<std::string>(relation); }
  const LexicalFunction& function() const { return std::get<LexicalFunction>(relation); }

  // Base predications order before LF predications.
  auto operator<=>(const Predication&) const = default;
};

class CompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A variable with the set of predications restricting it.
///
/// Every predication's argument is the index variable. The restriction set is
/// kept sorted and duplicate-free.
class SemIndex {
 public:
  SemIndex() = default;
  explicit SemIndex(Variable v) : var_(v) {}

  SemIndex(Variable v, std::vector<Predication> rest) : var_(v), rest_(std::move(rest)) {
    normalize();
    check();
  }

  Variable var() const { return var_; }
  const std::vector<Predication>& rest() const { return rest_; }
  bool empty() const { return rest_.empty(); }

  void add(Predication p) {
    if (p.arg != var_) throw CompositionError("predication argument differs from the index variable");
    rest_.push_back(std::move(p));
    normalize();
  }

  std::vector<std::string> base_preds() const {
    std::vector<std::string> out;
    for (const auto& p : rest_) {
      if (!p.is_lf()) out.push_back(p.pred());
    }
    return out;
  }

  std::vector<LexicalFunction> functions() const {
    std::vector<LexicalFunction> out;
    for (const auto& p : rest_) {
      if (p.is_lf()) out.push_back(p.function());
    }
    return out;
  }

  /// Throws CompositionError unless every predication is over the index
  /// variable.
  void check() const {
    for (const auto& p : rest_) {
      if (p.arg != var_) throw CompositionError("semantic index mentions a second variable");
    }
  }

  bool operator==(const SemIndex&) const = default;

 private:
  void normalize() {
    std::sort(rest_.begin(), rest_.end());
    rest_.erase(std::unique(rest_.begin(), rest_.end()), rest_.end());
  }

  Variable var_;
  std::vector<Predication> rest_;
};

/// Binds b's variable to a's and unions the restriction sets.
inline SemIndex sem_union(const SemIndex& a, const SemIndex& b) {
  a.check();
  b.check();
  std::vector<Predication> rest = a.rest();
  for (const auto& p : b.rest()) rest.push_back({p.relation, a.var()});
  return SemIndex(a.var(), std::move(rest));
}

/// True iff some bijective renaming of variables maps a onto b.
inline bool alpha_equiv(const SemIndex& a, const SemIndex& b) {
  if (a.rest().size() != b.rest().size()) return false;
  auto vars_of = [](const SemIndex& s) {
    std::vector<Variable> vs{s.var()};
    for (const auto& p : s.rest()) {
      if (std::find(vs.begin(), vs.end(), p.arg) == vs.end()) vs.push_back(p.arg);
    }
    return vs;
  };
  const std::vector<Variable> va = vars_of(a);
  std::vector<Variable> vb = vars_of(b);
  if (va.size() != vb.size()) return false;
  // The index variables must correspond; permute the rest.
  std::sort(vb.begin() + 1, vb.end());
  do {
    std::map<Variable, Variable> rename;
    for (std::size_t i = 0; i < va.size(); ++i) rename[va[i]] = vb[i];
    std::vector<Predication> mapped;
    for (const auto& p : a.rest()) mapped.push_back({p.relation, rename.at(p.arg)});
    std::sort(mapped.begin(), mapped.end());
    if (mapped == b.rest()) return true;
  } while (std::next_permutation(vb.begin() + 1, vb.end()));
  return false;
}

namespace detail {
inline std::string variable_name(std::size_t ordinal) {
  static constexpr std::array<const char*, 3> names = {"x", "y", "z"};
  if (ordinal < names.size()) return names[ordinal];
  return "x" + std::to_string(ordinal);
}
}  // namespace detail

/// Canonical predication text: `smoker(x),Magn(x)`. The index variable is
/// always rendered `x`.
inline std::string render_sem(const SemIndex& sem) {
  std::map<Variable, std::string> names{{sem.var(), "x"}};
  std::string out;
  for (const auto& p : sem.rest()) {
    if (!names.count(p.arg)) names.emplace(p.arg, detail::variable_name(names.size()));
    if (!out.empty()) out += ",";
    out += p.is_lf() ? lf_text(p.function()) : p.pred();
    out += "(" + names.at(p.arg) + ")";
  }
  return out;
}

/// LF-applied-to-base rendering used by pipeline traces: `Magn(smoker)`.
/// Falls back to render_sem unless there is exactly one base predication.
inline std::string render_functional(const SemIndex& sem) {
  const auto bases = sem.base_preds();
  if (bases.size() != 1) return render_sem(sem);
  const auto fns = sem.functions();
  if (fns.empty()) return bases.front();
  std::string out;
  for (const auto& fn : fns) {
    if (!out.empty()) out += ",";
    out += lf_text(fn) + "(" + bases.front() + ")";
  }
  return out;
}

class SemParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses canonical predication text. A relation name that parses as a
/// registered LF is an LF predication; anything else is a base predicate.
inline SemIndex parse_sem(std::string_view text, const LfRegistry& registry) {
  std::vector<std::pair<std::string, std::string>> items;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])) != 0) ++pos;
  };
  while (true) {
    skip_ws();
    const std::size_t open = text.find('(', pos);
    if (open == std::string_view::npos) throw SemParseError("expected '(' in '" + std::string(text) + "'");
    const std::size_t close = text.find(')', open);
    if (close == std::string_view::npos) throw SemParseError("expected ')' in '" + std::string(text) + "'");
    std::string rel(text.substr(pos, open - pos));
    std::string var(text.substr(open + 1, close - open - 1));
    while (!rel.empty() && std::isspace(static_cast<unsigned char>(rel.back())) != 0) rel.pop_back();
    if (rel.empty() || var.empty()) throw SemParseError("empty relation or variable in '" + std::string(text) + "'");
    items.emplace_back(std::move(rel), std::move(var));
    pos = close + 1;
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != ',') throw SemParseError("expected ',' in '" + std::string(text) + "'");
    ++pos;
  }
  std::map<std::string, Variable> vars;
  for (const auto& [rel, var] : items) {
    if (!vars.count(var)) vars.emplace(var, Variable{static_cast<std::uint32_t>(vars.size())});
  }
  if (vars.size() != 1) throw SemParseError("a semantic index has exactly one variable");
  const Variable v = vars.begin()->second;
  std::vector<Predication> rest;
  for (const auto& [rel, var] : items) {
    auto fn = parse_lf_text(rel);
    if (fn && registry.contains(fn->name)) {
      rest.push_back(Predication::lf(*fn, v));
    } else if (fn && (fn->merged || fn->subscript)) {
      throw SemParseError("unregistered lexical function '" + rel + "'");
    } else {
      rest.push_back(Predication::base(rel, v));
    }
  }
  return SemIndex(v, std::move(rest));
}

}  // namespace lfmt
