// Umbrella header for the translation library (the CLI lives in lfmt/cli.hpp).
#pragma once

#include "lfmt/analysis.hpp"
#include "lfmt/avm/feature_structure.hpp"
#include "lfmt/avm/sort_hierarchy.hpp"
#include "lfmt/avm/text.hpp"
#include "lfmt/avm/unify.hpp"
#include "lfmt/diagnostics.hpp"
#include "lfmt/errors.hpp"
#include "lfmt/generation.hpp"
#include "lfmt/lexicon/lexicon.hpp"
#include "lfmt/lexicon/loader.hpp"
#include "lfmt/lexicon/overwrite.hpp"
#include "lfmt/lexicon/serialize.hpp"
#include "lfmt/semantics.hpp"
#include "lfmt/transfer.hpp"
