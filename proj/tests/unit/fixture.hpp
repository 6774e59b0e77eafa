// The fixture lexicons, loaded once per test binary.
#pragma once

#include <gtest/gtest.h>

#include "lfmt/lfmt.hpp"

namespace lfmt::testing {

inline const Lexicon& fixtures() {
  static const LoadResult loaded = [] {
    LoadResult r = load_lexicon_paths({LFMT_LEXICON_DIR});
    if (!r.ok()) {
      for (const auto& d : r.diagnostics) ADD_FAILURE() << render(d);
    }
    return r;
  }();
  return loaded.lexicon;
}

inline SemIndex sem(std::string_view text) { return parse_sem(text, fixtures().lfs()); }

inline std::vector<std::string> surfaces(const std::vector<Realization>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(r.surface);
  return out;
}

}  // namespace lfmt::testing
