#include "jitlab/metrics/history_index.hpp"

#include <algorithm>
#include <set>

#include "jitlab/core/error.hpp"
#include "jitlab/metrics/review.hpp"

namespace jitlab::metrics {

const std::vector<std::size_t> HistoryIndex::kEmpty{};

std::string subsystem_of(std::string_view path) {
  const auto slash = path.find('/');
  return slash == std::string_view::npos ? std::string() : std::string(path.substr(0, slash));
}

std::string directory_of(std::string_view path) {
  const auto slash = path.rfind('/');
  return slash == std::string_view::npos ? std::string() : std::string(path.substr(0, slash));
}

std::vector<std::string> history_paths(const vcs::CommitRecord& commit) {
  std::set<std::string> paths;
  for (const auto& f : commit.files) {
    paths.insert(f.path);
    if (!f.old_path.empty()) paths.insert(f.old_path);
  }
  return {paths.begin(), paths.end()};
}

std::vector<std::string> subsystems_of(const vcs::CommitRecord& commit) {
  std::set<std::string> subs;
  for (const auto& f : commit.files) subs.insert(subsystem_of(f.path));
  return {subs.begin(), subs.end()};
}

void HistoryIndex::add(const vcs::CommitRecord& commit, std::span<const std::string> reviewers) {
  if (!changes_.empty() && commit.author_time < changes_.back().time) {
    throw DataError("history index: commit " + commit.id + " is older than the previously added change");
  }
  const std::size_t idx = changes_.size();
  Change change{commit.id, identity_key(commit.author), commit.author_time, subsystems_of(commit)};

  for (const auto& path : history_paths(commit)) by_file_[path].push_back(idx);
  for (const auto& sub : change.subsystems) by_subsystem_[sub].push_back(idx);

  std::set<std::string> actors{change.author_key};
  actors.insert(reviewers.begin(), reviewers.end());
  for (const auto& actor : actors) by_actor_[actor].push_back(idx);

  changes_.push_back(std::move(change));
}

const std::vector<std::size_t>& HistoryIndex::file_history(std::string_view path) const {
  auto it = by_file_.find(std::string(path));
  return it == by_file_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& HistoryIndex::subsystem_history(std::string_view subsystem) const {
  auto it = by_subsystem_.find(std::string(subsystem));
  return it == by_subsystem_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& HistoryIndex::participations(std::string_view actor_key) const {
  auto it = by_actor_.find(std::string(actor_key));
  return it == by_actor_.end() ? kEmpty : it->second;
}

}  // namespace jitlab::metrics
