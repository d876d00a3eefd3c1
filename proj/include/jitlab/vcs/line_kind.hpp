#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jitlab/vcs/commit.hpp"

namespace jitlab::vcs {

// Comment syntax for one language family. Looked up by file extension (or a
// few well-known file names); unknown files get an empty style, so every
// nonblank line is code.
struct CommentStyle {
  std::vector<std::string_view> line_markers;  // "//", "#", "--", ...
  std::string_view block_open;                 // "/*", "<!--"
  std::string_view block_close;                // "*/", "-->"
  bool star_continuation = false;              // " * text" inside C-style blocks
  bool hash_strings_single_quote = true;       // whether '...' delimits strings

  bool empty() const { return line_markers.empty() && block_open.empty(); }
};

const CommentStyle& comment_style_for(std::string_view path);

// Classifies a contiguous run of touched lines (one side of one hunk).
// `in_block` carries block-comment state across the run.
class LineClassifier {
 public:
  explicit LineClassifier(const CommentStyle& style) : style_(style) {}

  LineKind classify(std::string_view line);
  // Code with comments removed and all whitespace squeezed out; the key used
  // to detect comment-only and whitespace-only modifications.
  std::string code_signature(std::string_view line) const;

  void reset() { in_block_ = false; }

 private:
  const CommentStyle& style_;
  bool in_block_ = false;
};

std::string strip_whitespace(std::string_view line);

// Assigns kinds to the two sides of one hunk. An added line whose text
// equals a removed line once whitespace is squeezed out is a whitespace
// change; one whose code signature equals a removed line's signature is a
// comment change. The same pairing marks the removed side.
void classify_hunk(const CommentStyle& style, const std::vector<std::string>& removed,
                   const std::vector<std::string>& added, std::vector<LineKind>& removed_kinds,
                   std::vector<LineKind>& added_kinds);

}  // namespace jitlab::vcs
