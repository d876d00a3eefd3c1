#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jitlab/core/time.hpp"
#include "jitlab/vcs/commit.hpp"

namespace jitlab::metrics {

// Subsystem = first path segment ("" for top-level files); directory = full
// parent path.
std::string subsystem_of(std::string_view path);
std::string directory_of(std::string_view path);

// Prior-change bookkeeping for the history and experience families. Built
// by folding commits in time order; a query sees exactly the commits added
// before it.
class HistoryIndex {
 public:
  struct Change {
    std::string id;
    std::string author_key;
    Timestamp time{};
    std::vector<std::string> subsystems;
  };

  // `reviewers` are identity keys. Throws DataError when `commit` is older
  // than the last commit added.
  void add(const vcs::CommitRecord& commit, std::span<const std::string> reviewers = {});

  std::size_t size() const { return changes_.size(); }
  const Change& change(std::size_t i) const { return changes_[i]; }

  // Indices into change(), time ordered; empty when unknown.
  const std::vector<std::size_t>& file_history(std::string_view path) const;
  const std::vector<std::size_t>& subsystem_history(std::string_view subsystem) const;
  const std::vector<std::size_t>& participations(std::string_view actor_key) const;

 private:
  static const std::vector<std::size_t> kEmpty;

  std::vector<Change> changes_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_file_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_subsystem_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_actor_;
};

// Paths whose history a commit's files continue (renames count under both).
std::vector<std::string> history_paths(const vcs::CommitRecord& commit);
std::vector<std::string> subsystems_of(const vcs::CommitRecord& commit);

}  // namespace jitlab::metrics
