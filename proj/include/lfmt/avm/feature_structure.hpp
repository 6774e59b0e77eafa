// Typed feature structures: immutable rooted DAGs with reentrancy.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lfmt/avm/sort_hierarchy.hpp"

namespace lfmt {

enum class NodeKind { atomic, complex, set };

/// Features whose values are sets. Set nodes may only appear under these.
inline bool is_set_feature(std::string_view feature) {
  return feature == "REST" || feature == "COLLS" || feature == "ADJ_DTRS" || feature == "COMP_DTRS";
}

using Path = std::vector<std::string>;

/// Splits "SEM_IND.REST" into its features. The empty string is the root path.
inline Path parse_path(std::string_view text) {
  Path out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t dot = text.find('.', start);
    if (dot == std::string_view::npos) dot = text.size();
    out.emplace_back(text.substr(start, dot - start));
    start = dot + 1;
  }
  return out;
}

namespace detail {

struct FsNode {
  NodeKind kind = NodeKind::complex;
  std::string sort = std::string(SortHierarchy::top);
  std::string atom;
  std::vector<std::pair<std::string, std::uint32_t>> features;  // sorted by name once built
  std::vector<std::uint32_t> members;
};

using NodePool = std::vector<FsNode>;

inline const std::uint32_t* find_feature(const FsNode& n, std::string_view f) {
  for (const auto& [name, target] : n.features) {
    if (name == f) return &target;
  }
  return nullptr;
}

}  // namespace detail

/// A node of an immutable feature-structure graph.
///
/// Copies share the underlying node pool; sub-structures obtained through
/// get(), members() or path_value() refer into the same pool, so node identity
/// (same_node) reflects reentrancy.
class FeatureStructure {
 public:
  /// The most general structure: an empty complex node of sort top.
  FeatureStructure() : pool_(std::make_shared<detail::NodePool>(1)), root_(0) {}

  static FeatureStructure atom(std::string value, std::string sort = std::string(SortHierarchy::top)) {
    auto pool = std::make_shared<detail::NodePool>(1);
    (*pool)[0].kind = NodeKind::atomic;
    (*pool)[0].atom = std::move(value);
    (*pool)[0].sort = std::move(sort);
    return FeatureStructure(std::move(pool), 0);
  }

  NodeKind kind() const { return node().kind; }
  bool is_atomic() const { return kind() == NodeKind::atomic; }
  bool is_set() const { return kind() == NodeKind::set; }
  bool is_complex() const { return kind() == NodeKind::complex; }
  const std::string& sort() const { return node().sort; }
  const std::string& atom_value() const { return node().atom; }

  std::size_t feature_count() const { return node().features.size(); }

  std::vector<std::string> feature_names() const {
    std::vector<std::string> out;
    for (const auto& f : node().features) out.push_back(f.first);
    return out;
  }

  std::optional<FeatureStructure> get(std::string_view feature) const {
    const std::uint32_t* t = detail::find_feature(node(), feature);
    if (t == nullptr) return std::nullopt;
    return FeatureStructure(pool_, *t);
  }

  std::vector<FeatureStructure> members() const {
    std::vector<FeatureStructure> out;
    for (std::uint32_t m : node().members) out.push_back(FeatureStructure(pool_, m));
    return out;
  }

  bool same_node(const FeatureStructure& other) const { return pool_ == other.pool_ && root_ == other.root_; }

  /// Number of distinct nodes reachable from this one.
  std::size_t node_count() const {
    std::vector<bool> seen(pool_->size(), false);
    std::vector<std::uint32_t> stack{root_};
    std::size_t count = 0;
    while (!stack.empty()) {
      const std::uint32_t n = stack.back();
      stack.pop_back();
      if (seen[n]) continue;
      seen[n] = true;
      ++count;
      for (const auto& f : (*pool_)[n].features) stack.push_back(f.second);
      for (std::uint32_t m : (*pool_)[n].members) stack.push_back(m);
    }
    return count;
  }

  const detail::NodePool& pool() const { return *pool_; }
  std::uint32_t root() const { return root_; }

 private:
  friend class FsBuilder;
  FeatureStructure(std::shared_ptr<const detail::NodePool> pool, std::uint32_t root)
      : pool_(std::move(pool)), root_(root) {}

  const detail::FsNode& node() const { return (*pool_)[root_]; }

  std::shared_ptr<const detail::NodePool> pool_;
  std::uint32_t root_;
};

/// Node reached by following `path`, or nullopt when a feature is missing.
inline std::optional<FeatureStructure> path_value(const FeatureStructure& fs, const Path& path) {
  FeatureStructure cur = fs;
  for (const auto& f : path) {
    auto next = cur.get(f);
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

/// Mutable scratch graph used to assemble feature structures.
///
/// build() validates the graph reachable from the chosen root (acyclic,
/// unique feature names, sets only under set-valued features) and compacts it
/// into an immutable FeatureStructure with nodes in depth-first preorder.
class FsBuilder {
 public:
  using Ref = std::uint32_t;

  Ref complex(std::string sort = std::string(SortHierarchy::top)) {
    detail::FsNode n;
    n.sort = std::move(sort);
    return push(std::move(n));
  }

  Ref atom(std::string value, std::string sort = std::string(SortHierarchy::top)) {
    detail::FsNode n;
    n.kind = NodeKind::atomic;
    n.atom = std::move(value);
    n.sort = std::move(sort);
    return push(std::move(n));
  }

  Ref set() {
    detail::FsNode n;
    n.kind = NodeKind::set;
    return push(std::move(n));
  }

  void add_feature(Ref node, std::string name, Ref value) {
    auto& n = nodes_.at(node);
    if (n.kind != NodeKind::complex) throw StructureError("feature '" + name + "' added to a non-complex node");
    if (detail::find_feature(n, name) != nullptr) throw StructureError("duplicate feature '" + name + "'");
    n.features.emplace_back(std::move(name), value);
  }

  void add_member(Ref set_node, Ref member) {
    auto& n = nodes_.at(set_node);
    if (n.kind != NodeKind::set) throw StructureError("member added to a non-set node");
    n.members.push_back(member);
  }

  /// Feature value of a node under construction, if present.
  std::optional<Ref> feature(Ref node, std::string_view name) const {
    const std::uint32_t* t = detail::find_feature(nodes_.at(node), name);
    if (t == nullptr) return std::nullopt;
    return *t;
  }

  /// Follows `path` from `node`, creating empty complex nodes where missing.
  Ref ensure_path(Ref node, const Path& path) {
    Ref cur = node;
    for (const auto& f : path) {
      auto next = feature(cur, f);
      if (!next) {
        const Ref created = complex();
        add_feature(cur, f, created);
        next = created;
      }
      cur = *next;
    }
    return cur;
  }

  void set_sort(Ref node, std::string sort) { nodes_.at(node).sort = std::move(sort); }

  /// Copies the graph reachable from `fs` into this builder, preserving sharing.
  Ref import(const FeatureStructure& fs) {
    std::map<std::uint32_t, Ref> copied;
    return import_node(fs.pool(), fs.root(), copied);
  }

  FeatureStructure build(Ref root) const {
    if (nodes_.at(root).kind == NodeKind::set) throw StructureError("a set cannot be the root of a structure");
    auto pool = std::make_shared<detail::NodePool>();
    std::map<Ref, std::uint32_t> renumber;
    std::vector<int> color(nodes_.size(), 0);
    emit(root, *pool, renumber, color);
    for (auto& n : *pool) {
      std::sort(n.features.begin(), n.features.end());
      for (std::size_t i = 1; i < n.features.size(); ++i) {
        if (n.features[i].first == n.features[i - 1].first) {
          throw StructureError("duplicate feature '" + n.features[i].first + "'");
        }
      }
      for (const auto& [name, target] : n.features) {
        if ((*pool)[target].kind == NodeKind::set && !is_set_feature(name)) {
          throw StructureError("set value under non-set feature '" + name + "'");
        }
      }
      for (std::uint32_t m : n.members) {
        if ((*pool)[m].kind == NodeKind::set) throw StructureError("a set cannot be a member of a set");
      }
    }
    return FeatureStructure(std::move(pool), 0);
  }

  std::size_t size() const { return nodes_.size(); }
  const detail::FsNode& node(Ref r) const { return nodes_.at(r); }
  detail::FsNode& node(Ref r) { return nodes_.at(r); }

 private:
  Ref push(detail::FsNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<Ref>(nodes_.size() - 1);
  }

  Ref import_node(const detail::NodePool& pool, std::uint32_t n, std::map<std::uint32_t, Ref>& copied) {
    if (auto it = copied.find(n); it != copied.end()) return it->second;
    const detail::FsNode& src = pool[n];
    detail::FsNode shell;
    shell.kind = src.kind;
    shell.sort = src.sort;
    shell.atom = src.atom;
    const Ref r = push(std::move(shell));
    copied.emplace(n, r);
    for (const auto& [name, target] : src.features) {
      const Ref t = import_node(pool, target, copied);
      nodes_[r].features.emplace_back(name, t);
    }
    for (std::uint32_t m : src.members) {
      const Ref t = import_node(pool, m, copied);
      nodes_[r].members.push_back(t);
    }
    return r;
  }

  // 0 = unvisited, 1 = on stack, 2 = done
  std::uint32_t emit(Ref r, detail::NodePool& pool, std::map<Ref, std::uint32_t>& renumber,
                     std::vector<int>& color) const {
    if (color[r] == 1) throw StructureError("cyclic feature structure");
    if (color[r] == 2) return renumber.at(r);
    color[r] = 1;
    const auto id = static_cast<std::uint32_t>(pool.size());
    renumber.emplace(r, id);
    const detail::FsNode& src = nodes_[r];
    {
      detail::FsNode shell;
      shell.kind = src.kind;
      shell.sort = src.sort;
      shell.atom = src.atom;
      pool.push_back(std::move(shell));
    }
    auto features = src.features;
    std::stable_sort(features.begin(), features.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [name, target] : features) {
      const std::uint32_t t = emit(target, pool, renumber, color);
      pool[id].features.emplace_back(name, t);
    }
    for (Ref m : src.members) {
      const std::uint32_t t = emit(m, pool, renumber, color);
      pool[id].members.push_back(t);
    }
    color[r] = 2;
    return id;
  }

  detail::NodePool nodes_;
};

}  // namespace lfmt
