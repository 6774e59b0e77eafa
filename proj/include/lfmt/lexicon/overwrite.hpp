// Default overwrite: path-wise priority union of two feature structures.
#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "lfmt/avm/feature_structure.hpp"
#include "lfmt/avm/sort_hierarchy.hpp"

namespace lfmt {

namespace detail {

class Overwriter {
 public:
  Overwriter(const FeatureStructure& base, const FeatureStructure& over, const SortHierarchy& sorts)
      : s_(base.pool()), t_(over.pool()), sorts_(sorts) {}

  FeatureStructure run(std::uint32_t s_root, std::uint32_t t_root) { return b_.build(merge(s_root, t_root)); }

 private:
  static constexpr std::int64_t none = -1;

  // Copy of a base node reached only through paths the overriding structure
  // does not mention; base reentrancies among such paths survive.
  FsBuilder::Ref copy_base(std::uint32_t s) {
    if (auto it = base_copy_.find(s); it != base_copy_.end()) return it->second;
    const FsBuilder::Ref r = shell(s_[s]);
    base_copy_.emplace(s, r);
    for (const auto& [name, target] : s_[s].features) b_.add_feature(r, name, copy_base(target));
    for (std::uint32_t m : s_[s].members) b_.add_member(r, copy_base(m));
    return r;
  }

  FsBuilder::Ref shell(const FsNode& n) {
    switch (n.kind) {
      case NodeKind::atomic: return b_.atom(n.atom, n.sort);
      case NodeKind::set: return b_.set();
      case NodeKind::complex: break;
    }
    return b_.complex(n.sort);
  }

  // Overriding nodes are memoized on their own identity so that every
  // reentrancy of the overriding structure is preserved. When one such node is
  // reached along several paths, the base material merged in is the one found
  // on the first path.
  FsBuilder::Ref merge(std::int64_t s, std::uint32_t t) {
    if (auto it = over_copy_.find(t); it != over_copy_.end()) return it->second;
    const FsNode& tn = t_[t];
    if (s == none) return copy_over(t);
    const FsNode& sn = s_[static_cast<std::uint32_t>(s)];

    if (tn.kind != NodeKind::complex) return copy_over(t);

    auto meet = sorts_.meet(sn.sort, tn.sort);
    const std::string sort = meet ? *meet : tn.sort;

    if (sn.kind != NodeKind::complex) {
      if (tn.features.empty() && meet) {
        FsBuilder::Ref r = 0;
        if (sn.kind == NodeKind::atomic) {
          r = b_.atom(sn.atom, sort);
          over_copy_.emplace(t, r);
        } else {
          r = b_.set();
          over_copy_.emplace(t, r);
          for (std::uint32_t m : sn.members) b_.add_member(r, copy_base(m));
        }
        return r;
      }
      return copy_over(t);
    }

    const FsBuilder::Ref r = b_.complex(sort);
    over_copy_.emplace(t, r);
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> features;
    for (const auto& [name, target] : sn.features) features.try_emplace(name, none, none).first->second.first = target;
    for (const auto& [name, target] : tn.features) features.try_emplace(name, none, none).first->second.second = target;
    for (const auto& [name, pair] : features) {
      const auto [sf, tf] = pair;
      const FsBuilder::Ref child =
          tf == none ? copy_base(static_cast<std::uint32_t>(sf)) : merge(sf, static_cast<std::uint32_t>(tf));
      b_.add_feature(r, name, child);
    }
    return r;
  }

  FsBuilder::Ref copy_over(std::uint32_t t) {
    if (auto it = over_copy_.find(t); it != over_copy_.end()) return it->second;
    const FsBuilder::Ref r = shell(t_[t]);
    over_copy_.emplace(t, r);
    for (const auto& [name, target] : t_[t].features) b_.add_feature(r, name, copy_over(target));
    for (std::uint32_t m : t_[t].members) b_.add_member(r, copy_over(m));
    return r;
  }

  const NodePool& s_;
  const NodePool& t_;
  const SortHierarchy& sorts_;
  FsBuilder b_;
  std::map<std::uint32_t, FsBuilder::Ref> base_copy_;
  std::map<std::uint32_t, FsBuilder::Ref> over_copy_;
};

}  // namespace detail

/// Priority union: every path constrained by `over` takes its value there,
/// replacing conflicting material of `base`; every other path of `base`
/// survives. Reentrancies of `over` are kept; those of `base` survive only
/// between paths `over` leaves alone. Never fails.
inline FeatureStructure default_overwrite(const FeatureStructure& base, const FeatureStructure& over,
                                          const SortHierarchy& sorts) {
  detail::Overwriter w(base, over, sorts);
  return w.run(base.root(), over.root());
}

}  // namespace lfmt
