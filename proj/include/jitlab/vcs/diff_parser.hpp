#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jitlab/vcs/commit.hpp"

namespace jitlab::vcs {

// Parses `git diff-tree -p -U0` output into per-file deltas, classifying
// every touched line by the comment syntax of the file's language.
std::vector<FileDelta> parse_unified_diff(std::string_view diff_text);

// Undoes git's C-style quoting of unusual paths ("a\tb" -> a<TAB>b).
std::string unquote_git_path(std::string_view quoted);

}  // namespace jitlab::vcs
