#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jitlab/vcs/commit.hpp"

namespace jitlab::vcs {

// Where one line of a file came from, as reported by blame.
struct LineOrigin {
  std::string commit_id;
  std::string path;  // path of the file in the origin commit
  int line = 0;      // line number in the origin commit's post-image

  bool operator==(const LineOrigin&) const = default;
};

// Anything that can answer "which commit last touched these lines".
class LineOriginSource {
 public:
  virtual ~LineOriginSource() = default;
  virtual std::map<int, LineOrigin> blame_lines(std::string_view commit_id, std::string_view path,
                                                std::span<const int> lines) const = 0;
};

enum class MergeDiffMode {
  kFirstParent,  // diff merges against their first parent
  kSkip,         // merges contribute no deltas
};

struct MiningOptions {
  MergeDiffMode merge_mode = MergeDiffMode::kFirstParent;
  int rename_similarity = 50;  // percent; 0 disables rename detection
  unsigned jobs = 1;           // worker threads for delta extraction
};

// Read-only view of an on-disk git repository, driven through the git CLI.
// Copies share the blame cache; every const member is safe to call from
// several threads at once.
class Repository : public LineOriginSource {
 public:
  static Repository open(const std::filesystem::path& path, MiningOptions options = {});

  const std::filesystem::path& path() const { return root_; }
  const MiningOptions& options() const { return options_; }

  // All commits reachable from `branch`, parents before children. An empty
  // repository yields an empty list. Deltas are not filled in.
  std::vector<CommitRecord> scan_history(std::string_view branch) const;

  // Deltas against the first parent (or the empty tree for root commits).
  std::vector<FileDelta> compute_file_deltas(const CommitRecord& commit) const;

  // scan_history + compute_file_deltas for every commit.
  std::vector<CommitRecord> mine(std::string_view branch) const;

  std::map<int, LineOrigin> blame_lines(std::string_view commit_id, std::string_view path,
                                        std::span<const int> lines) const override;

  // Resolves a revision to a full hash; nullopt when it does not exist.
  std::optional<std::string> resolve(std::string_view rev) const;
  std::optional<std::string> file_at(std::string_view commit_id, std::string_view path) const;
  // Unified diff text of one commit against its first parent, for display.
  std::string diff_text(const CommitRecord& commit) const;

  std::string git(const std::vector<std::string>& args) const;

 private:
  struct BlameCache;

  Repository(std::filesystem::path root, MiningOptions options);
  const std::vector<LineOrigin>& blame_file(const std::string& commit_id, const std::string& path) const;

  std::filesystem::path root_;
  MiningOptions options_;
  std::shared_ptr<BlameCache> blame_cache_;
};

// Parses `git blame --line-porcelain` output into per-line origins.
std::vector<LineOrigin> parse_line_porcelain(std::string_view text);

}  // namespace jitlab::vcs
