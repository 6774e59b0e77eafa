// Unification, subsumption and isomorphism over feature structures.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lfmt/avm/feature_structure.hpp"
#include "lfmt/avm/sort_hierarchy.hpp"

namespace lfmt {

namespace detail {

/// Simultaneous traversal of two graphs building a node mapping.
///
/// In isomorphism mode the mapping must be a bijection preserving every label;
/// in subsumption mode it must be a function from the general graph into the
/// specific one under which every constraint of the general graph holds.
/// Nodes for which `fixed` returns true may only map to themselves (used when
/// comparing two parts of the same graph).
class GraphMatcher {
 public:
  enum class Mode { isomorphism, subsumption };

  GraphMatcher(const NodePool& a, const NodePool& b, Mode mode, const SortHierarchy* sorts = nullptr)
      : a_(a), b_(b), mode_(mode), sorts_(sorts), fwd_(a.size(), -1), bwd_(b.size(), -1) {}

  void set_fixed(std::function<bool(std::uint32_t)> fixed) { fixed_ = std::move(fixed); }

  bool match(std::uint32_t u, std::uint32_t v) {
    if (fwd_[u] != -1) return fwd_[u] == static_cast<std::int64_t>(v);
    if (mode_ == Mode::isomorphism && bwd_[v] != -1) return false;
    if (fixed_ && (fixed_(u) || fixed_(v)) && u != v) return false;
    fwd_[u] = v;
    bwd_[v] = u;
    const FsNode& x = a_[u];
    const FsNode& y = b_[v];
    return mode_ == Mode::isomorphism ? match_iso(x, y) : match_subsumes(x, y);
  }

 private:
  bool match_iso(const FsNode& x, const FsNode& y) {
    if (x.kind != y.kind || x.sort != y.sort || x.atom != y.atom) return false;
    if (x.features.size() != y.features.size()) return false;
    for (std::size_t i = 0; i < x.features.size(); ++i) {
      if (x.features[i].first != y.features[i].first) return false;
    }
    for (std::size_t i = 0; i < x.features.size(); ++i) {
      if (!match(x.features[i].second, y.features[i].second)) return false;
    }
    if (x.members.size() != y.members.size()) return false;
    return match_members(x.members, y.members, true);
  }

  bool match_subsumes(const FsNode& x, const FsNode& y) {
    if (!sort_leq(y.sort, x.sort)) return false;
    switch (x.kind) {
      case NodeKind::atomic:
        return y.kind == NodeKind::atomic && x.atom == y.atom;
      case NodeKind::set:
        return y.kind == NodeKind::set && match_members(x.members, y.members, false);
      case NodeKind::complex:
        if (x.features.empty()) return true;
        if (y.kind != NodeKind::complex) return false;
        for (const auto& [name, target] : x.features) {
          const std::uint32_t* other = find_feature(y, name);
          if (other == nullptr || !match(target, *other)) return false;
        }
        return true;
    }
    return false;
  }

  bool sort_leq(const std::string& specific, const std::string& general) const {
    if (sorts_ == nullptr) return specific == general || general == SortHierarchy::top;
    return sorts_->leq(specific, general);
  }

  // Each member of `xs` is matched to a member of `ys`; injective for
  // isomorphism. Backtracks locally over the choice for each member.
  bool match_members(const std::vector<std::uint32_t>& xs, const std::vector<std::uint32_t>& ys, bool injective) {
    std::vector<bool> used(ys.size(), false);
    for (std::uint32_t x : xs) {
      bool found = false;
      for (std::size_t j = 0; j < ys.size() && !found; ++j) {
        if (injective && used[j]) continue;
        auto saved_fwd = fwd_;
        auto saved_bwd = bwd_;
        if (match(x, ys[j])) {
          used[j] = true;
          found = true;
        } else {
          fwd_ = std::move(saved_fwd);
          bwd_ = std::move(saved_bwd);
        }
      }
      if (!found) return false;
    }
    return true;
  }

  const NodePool& a_;
  const NodePool& b_;
  Mode mode_;
  const SortHierarchy* sorts_;
  std::vector<std::int64_t> fwd_;
  std::vector<std::int64_t> bwd_;
  std::function<bool(std::uint32_t)> fixed_;
};

/// Union-find unification over a working copy of both inputs.
class Unifier {
 public:
  explicit Unifier(const SortHierarchy& sorts) : sorts_(sorts) {}

  std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b) {
    const std::uint32_t ra = import(a);
    const std::uint32_t rb = import(b);
    if (!unify_nodes(ra, rb)) return std::nullopt;
    return extract(ra);
  }

 private:
  struct WorkNode {
    FsNode node;
    std::int64_t forward = -1;
  };

  std::uint32_t import(const FeatureStructure& fs) {
    std::map<std::uint32_t, std::uint32_t> copied;
    return import_node(fs.pool(), fs.root(), copied);
  }

  std::uint32_t import_node(const NodePool& pool, std::uint32_t n, std::map<std::uint32_t, std::uint32_t>& copied) {
    if (auto it = copied.find(n); it != copied.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(work_.size());
    copied.emplace(n, id);
    WorkNode w;
    w.node.kind = pool[n].kind;
    w.node.sort = pool[n].sort;
    w.node.atom = pool[n].atom;
    if (!sorts_.contains(w.node.sort)) throw StructureError("undeclared sort '" + w.node.sort + "'");
    work_.push_back(std::move(w));
    for (const auto& [name, target] : pool[n].features) {
      const std::uint32_t t = import_node(pool, target, copied);
      work_[id].node.features.emplace_back(name, t);
    }
    for (std::uint32_t m : pool[n].members) {
      const std::uint32_t t = import_node(pool, m, copied);
      work_[id].node.members.push_back(t);
    }
    return id;
  }

  std::uint32_t find(std::uint32_t n) {
    std::uint32_t root = n;
    while (work_[root].forward != -1) root = static_cast<std::uint32_t>(work_[root].forward);
    while (work_[n].forward != -1) {
      const auto next = static_cast<std::uint32_t>(work_[n].forward);
      work_[n].forward = root;
      n = next;
    }
    return root;
  }

  static int specificity(const FsNode& n) {
    if (n.kind == NodeKind::atomic) return 3;
    if (n.kind == NodeKind::set) return 2;
    return n.features.empty() ? 0 : 1;
  }

  bool unify_nodes(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    auto sort = sorts_.meet(work_[a].node.sort, work_[b].node.sort);
    if (!sort) return false;

    // The representative keeps the more specific kind.
    if (specificity(work_[b].node) > specificity(work_[a].node)) std::swap(a, b);
    FsNode& rep = work_[a].node;
    FsNode& other = work_[b].node;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pending;
    switch (rep.kind) {
      case NodeKind::atomic:
        if (other.kind == NodeKind::atomic) {
          if (rep.atom != other.atom) return false;
        } else if (other.kind == NodeKind::set || !other.features.empty()) {
          return false;
        }
        break;
      case NodeKind::set:
        if (other.kind == NodeKind::set) {
          rep.members.insert(rep.members.end(), other.members.begin(), other.members.end());
        } else if (!other.features.empty()) {
          return false;
        }
        break;
      case NodeKind::complex:
        for (const auto& [name, target] : other.features) {
          bool merged = false;
          for (const auto& [rname, rtarget] : rep.features) {
            if (rname == name) {
              pending.emplace_back(rtarget, target);
              merged = true;
              break;
            }
          }
          if (!merged) rep.features.emplace_back(name, target);
        }
        break;
    }
    rep.sort = *sort;
    work_[b].forward = a;
    for (const auto& [x, y] : pending) {
      if (!unify_nodes(x, y)) return false;
    }
    return true;
  }

  std::optional<FeatureStructure> extract(std::uint32_t root) {
    FsBuilder builder;
    std::map<std::uint32_t, FsBuilder::Ref> made;
    std::map<std::uint32_t, int> color;
    std::optional<FsBuilder::Ref> r = copy_out(find(root), builder, made, color);
    if (!r) return std::nullopt;  // occurs check
    FeatureStructure raw = builder.build(*r);
    return dedupe_sets(raw);
  }

  std::optional<FsBuilder::Ref> copy_out(std::uint32_t n, FsBuilder& builder, std::map<std::uint32_t, FsBuilder::Ref>& made,
                                         std::map<std::uint32_t, int>& color) {
    if (color[n] == 1) return std::nullopt;
    if (color[n] == 2) return made.at(n);
    color[n] = 1;
    const FsNode src = work_[n].node;
    FsBuilder::Ref r = 0;
    switch (src.kind) {
      case NodeKind::atomic: r = builder.atom(src.atom, src.sort); break;
      case NodeKind::set: r = builder.set(); break;
      case NodeKind::complex: r = builder.complex(src.sort); break;
    }
    made.emplace(n, r);
    for (const auto& [name, target] : src.features) {
      auto t = copy_out(find(target), builder, made, color);
      if (!t) return std::nullopt;
      builder.add_feature(r, name, *t);
    }
    for (std::uint32_t m : src.members) {
      auto t = copy_out(find(m), builder, made, color);
      if (!t) return std::nullopt;
      builder.add_member(r, *t);
    }
    color[n] = 2;
    return r;
  }

  // Set union can leave members that denote the same structure; drop them.
  static FeatureStructure dedupe_sets(const FeatureStructure& fs) {
    const NodePool& pool = fs.pool();
    std::vector<std::vector<std::uint32_t>> kept(pool.size());
    bool changed = false;
    for (std::uint32_t s = 0; s < pool.size(); ++s) {
      if (pool[s].kind != NodeKind::set) continue;
      for (std::uint32_t m : pool[s].members) {
        bool dup = false;
        for (std::uint32_t k : kept[s]) {
          if (k == m || duplicate_members(pool, fs.root(), s, k, m)) {
            dup = true;
            break;
          }
        }
        if (dup) {
          changed = true;
        } else {
          kept[s].push_back(m);
        }
      }
    }
    if (!changed) return fs;
    NodePool trimmed = pool;
    for (std::uint32_t s = 0; s < trimmed.size(); ++s) {
      if (trimmed[s].kind == NodeKind::set) trimmed[s].members = kept[s];
    }
    FsBuilder builder;
    for (const auto& n : trimmed) {
      const FsBuilder::Ref r = n.kind == NodeKind::atomic ? builder.atom(n.atom, n.sort)
                               : n.kind == NodeKind::set  ? builder.set()
                                                          : builder.complex(n.sort);
      (void)r;
    }
    for (std::uint32_t i = 0; i < trimmed.size(); ++i) {
      for (const auto& [name, target] : trimmed[i].features) builder.add_feature(i, name, target);
      for (std::uint32_t m : trimmed[i].members) builder.add_member(i, m);
    }
    return builder.build(fs.root());
  }

  // Members x and y of set s are duplicates when their subgraphs are
  // isomorphic by a mapping that is the identity on every node also reachable
  // from outside those two members.
  static bool duplicate_members(const NodePool& pool, std::uint32_t root, std::uint32_t s, std::uint32_t x,
                                std::uint32_t y) {
    std::vector<bool> outside(pool.size(), false);
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      const std::uint32_t n = stack.back();
      stack.pop_back();
      if (outside[n]) continue;
      outside[n] = true;
      for (const auto& f : pool[n].features) stack.push_back(f.second);
      for (std::uint32_t m : pool[n].members) {
        if (n == s && (m == x || m == y)) continue;
        stack.push_back(m);
      }
    }
    if (outside[x] || outside[y]) return false;
    GraphMatcher matcher(pool, pool, GraphMatcher::Mode::isomorphism);
    matcher.set_fixed([&outside](std::uint32_t n) { return static_cast<bool>(outside[n]); });
    return matcher.match(x, y);
  }

  const SortHierarchy& sorts_;
  std::vector<WorkNode> work_;
};

}  // namespace detail

/// Most general structure subsumed by both inputs, or nullopt on failure.
///
/// Node sorts meet in `sorts`; atoms must agree; set-valued nodes unify by
/// union of their members (members themselves are never unified with each
/// other). Results that would be cyclic fail.
inline std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b,
                                             const SortHierarchy& sorts) {
  detail::Unifier u(sorts);
  return u.unify(a, b);
}

/// True iff every path, value and coindexation constraint of `general` holds
/// in `specific`.
inline bool subsumes(const FeatureStructure& general, const FeatureStructure& specific, const SortHierarchy& sorts) {
  detail::GraphMatcher m(general.pool(), specific.pool(), detail::GraphMatcher::Mode::subsumption, &sorts);
  return m.match(general.root(), specific.root());
}

/// Isomorphism of the two graphs; tags compare up to renaming.
inline bool struct_equal(const FeatureStructure& a, const FeatureStructure& b) {
  detail::GraphMatcher m(a.pool(), b.pool(), detail::GraphMatcher::Mode::isomorphism);
  return m.match(a.root(), b.root());
}

}  // namespace lfmt
