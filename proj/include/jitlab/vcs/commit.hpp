#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jitlab/core/time.hpp"

namespace jitlab::vcs {

enum class LineKind { kCode, kComment, kWhitespace };

std::string_view to_string(LineKind kind);
LineKind line_kind_from_string(std::string_view text);

enum class ChangeStatus { kAdded, kModified, kDeleted, kRenamed };

std::string_view to_string(ChangeStatus status);
ChangeStatus change_status_from_string(std::string_view text);

// Line-level provenance for one file touched by a commit. Line numbers are
// 1-based; added lines are numbered in the post-image, deleted lines in the
// pre-image. Both lists are sorted and duplicate-free.
struct FileDelta {
  std::string path;      // post-image path (pre-image path for deletions)
  std::string old_path;  // pre-image path; equals `path` unless renamed/added
  ChangeStatus status = ChangeStatus::kModified;
  bool binary = false;
  int lines_added = 0;
  int lines_deleted = 0;
  std::vector<int> added_line_numbers;
  std::vector<int> deleted_line_numbers;
  // Kind of each line this change introduced (post-image numbering).
  std::map<int, LineKind> line_kinds;
  // Kind of each line this change removed (pre-image numbering).
  std::map<int, LineKind> deleted_line_kinds;

  bool operator==(const FileDelta&) const = default;
};

struct CommitRecord {
  std::string id;
  std::string author;  // "Name <email>"
  Timestamp author_time{};
  Timestamp commit_time{};
  std::string message;
  std::vector<std::string> parents;
  std::vector<FileDelta> files;

  bool is_root() const { return parents.empty(); }
  bool is_merge() const { return parents.size() > 1; }

  bool operator==(const CommitRecord&) const = default;
};

// Non-owning id -> record lookup over a mined history.
class CommitIndex {
 public:
  CommitIndex() = default;
  explicit CommitIndex(const std::vector<CommitRecord>& commits);

  const CommitRecord* find(std::string_view id) const;
  const CommitRecord& at(std::string_view id) const;
  std::size_t size() const { return by_id_.size(); }

 private:
  std::unordered_map<std::string, const CommitRecord*> by_id_;
};

}  // namespace jitlab::vcs
