// Sort hierarchy for typed feature structures.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lfmt {

/// Raised for malformed feature structures: cycles, duplicate features,
/// misplaced sets, undeclared sorts.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite partial order of sort names with `top` as its greatest element.
///
/// `a <= b` reads "a is at least as specific as b". Two sorts are compatible
/// when they have a unique greatest lower bound; pairs whose lower bounds have
/// several maximal elements are treated as incompatible.
class SortHierarchy {
 public:
  static constexpr std::string_view top = "top";

  SortHierarchy() { add_node(std::string(top)); }

  /// Sorts the lexicon compiler and the analyzer build structures from.
  static SortHierarchy standard() {
    SortHierarchy h;
    h.declare("sign", {});
    h.declare("word", {"sign"});
    h.declare("phrase", {"sign"});
    h.declare("collocation", {"phrase"});
    h.declare("collocate", {"word"});
    h.declare("sem_ind", {});
    h.declare("index", {});
    h.declare("pred", {});
    h.declare("lf_pred", {});
    h.declare("qualia", {});
    return h;
  }

  bool contains(std::string_view sort) const { return index_.find(std::string(sort)) != index_.end(); }

  /// Declares `sort` below each of `parents` (below `top` when empty).
  /// Redeclaring an existing sort adds parents. Throws on unknown parents and
  /// on declarations that would make the order cyclic.
  void declare(const std::string& sort, const std::vector<std::string>& parents) {
    for (const auto& p : parents) {
      if (!contains(p)) throw StructureError("unknown parent sort '" + p + "' for '" + sort + "'");
    }
    if (!contains(sort)) {
      add_node(sort);
      declared_.push_back(sort);
    }
    const std::size_t id = index_.at(sort);
    for (const auto& p : parents) {
      const std::size_t pid = index_.at(p);
      if (pid == id || upsets_[pid].count(id) != 0) {
        throw StructureError("sort declaration '" + sort + " < " + p + "' makes the hierarchy cyclic");
      }
      if (std::find(parents_[id].begin(), parents_[id].end(), pid) == parents_[id].end()) {
        parents_[id].push_back(pid);
      }
    }
    if (parents_[id].empty()) parents_[id].push_back(0);
    recompute();
  }

  /// True iff `specific` is at least as specific as `general`.
  bool leq(std::string_view specific, std::string_view general) const {
    return upsets_[id_of(specific)].count(id_of(general)) != 0;
  }

  /// Greatest lower bound, or nullopt when the sorts are incompatible.
  std::optional<std::string> meet(std::string_view a, std::string_view b) const {
    const std::size_t ia = id_of(a);
    const std::size_t ib = id_of(b);
    if (upsets_[ia].count(ib) != 0) return names_[ia];
    if (upsets_[ib].count(ia) != 0) return names_[ib];
    std::vector<std::size_t> lower;
    for (std::size_t s = 0; s < names_.size(); ++s) {
      if (upsets_[s].count(ia) != 0 && upsets_[s].count(ib) != 0) lower.push_back(s);
    }
    std::vector<std::size_t> maximal;
    for (std::size_t c : lower) {
      const bool dominated = std::any_of(lower.begin(), lower.end(), [&](std::size_t d) {
        return d != c && upsets_[c].count(d) != 0;
      });
      if (!dominated) maximal.push_back(c);
    }
    if (maximal.size() != 1) return std::nullopt;
    return names_[maximal.front()];
  }

  /// Non-top sorts with their direct parents, in declaration order.
  std::vector<std::pair<std::string, std::vector<std::string>>> declarations() const {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    for (const auto& name : declared_) {
      std::vector<std::string> ps;
      for (std::size_t p : parents_[index_.at(name)]) ps.push_back(names_[p]);
      out.emplace_back(name, std::move(ps));
    }
    return out;
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  void add_node(std::string name) {
    index_.emplace(name, names_.size());
    names_.push_back(std::move(name));
    parents_.emplace_back();
    upsets_.push_back({names_.size() - 1});
  }

  std::size_t id_of(std::string_view sort) const {
    auto it = index_.find(std::string(sort));
    if (it == index_.end()) throw StructureError("undeclared sort '" + std::string(sort) + "'");
    return it->second;
  }

  void recompute() {
    for (std::size_t s = 0; s < names_.size(); ++s) {
      std::set<std::size_t> up{s};
      std::vector<std::size_t> stack{s};
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        for (std::size_t p : parents_[cur]) {
          if (up.insert(p).second) stack.push_back(p);
        }
      }
      upsets_[s] = std::move(up);
    }
  }

  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::set<std::size_t>> upsets_;
  std::vector<std::string> declared_;
};

}  // namespace lfmt
