#include "jitlab/vcs/repository.hpp"

#include <array>
#include <charconv>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "jitlab/core/error.hpp"
#include "jitlab/core/parallel.hpp"
#include "jitlab/core/subprocess.hpp"
#include "jitlab/vcs/diff_parser.hpp"

namespace jitlab::vcs {
namespace {

std::string trim_trailing_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

std::int64_t parse_epoch(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{}) throw DataError("git log: bad timestamp '" + std::string(text) + "'");
  return value;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = text.find(' ', pos);
    const auto stop = end == std::string_view::npos ? text.size() : end;
    if (stop > pos) out.emplace_back(text.substr(pos, stop - pos));
    pos = stop + 1;
  }
  return out;
}

}  // namespace

struct Repository::BlameCache {
  std::shared_mutex mutex;
  std::unordered_map<std::string, std::shared_ptr<const std::vector<LineOrigin>>> files;
};

Repository::Repository(std::filesystem::path root, MiningOptions options)
    : root_(std::move(root)), options_(options), blame_cache_(std::make_shared<BlameCache>()) {}

Repository Repository::open(const std::filesystem::path& path, MiningOptions options) {
  std::error_code ec;
  if (!std::filesystem::is_directory(path, ec)) {
    throw DataError("repository path is not a readable directory: " + path.string());
  }
  Repository repo(std::filesystem::absolute(path), options);
  const auto probe = run_process({"git", "-C", repo.root_.string(), "rev-parse", "--git-dir"});
  if (!probe.ok()) throw DataError("not a git repository: " + path.string());
  const auto shallow =
      run_process({"git", "-C", repo.root_.string(), "rev-parse", "--is-shallow-repository"});
  if (shallow.ok() && trim_trailing_newlines(shallow.out) == "true") {
    throw DataError("shallow clones are not supported (history is truncated): " + path.string());
  }
  return repo;
}

std::string Repository::git(const std::vector<std::string>& args) const {
  std::vector<std::string> argv = {"git", "-C", root_.string(), "-c", "core.quotePath=false",
                                   "-c", "log.showSignature=false"};
  argv.insert(argv.end(), args.begin(), args.end());
  auto result = run_process(argv);
  if (!result.ok()) {
    std::string cmd;
    for (const auto& a : args) cmd += " " + a;
    throw DataError("git" + cmd + " failed: " + trim_trailing_newlines(result.err));
  }
  return std::move(result.out);
}

std::optional<std::string> Repository::resolve(std::string_view rev) const {
  const auto result = run_process({"git", "-C", root_.string(), "rev-parse", "--verify", "-q",
                                   std::string(rev) + "^{commit}"});
  if (!result.ok()) return std::nullopt;
  return trim_trailing_newlines(result.out);
}

std::vector<CommitRecord> Repository::scan_history(std::string_view branch) const {
  if (trim_trailing_newlines(git({"rev-list", "-n", "1", "--all"})).empty()) return {};
  const auto tip = resolve(branch);
  if (!tip) throw DataError("unknown branch '" + std::string(branch) + "' in " + root_.string());

  const std::string out =
      git({"log", "--topo-order", "--reverse", "-z", "--format=%H%n%P%n%an <%ae>%n%at%n%ct%n%B", *tip});

  std::vector<CommitRecord> commits;
  std::size_t pos = 0;
  while (pos < out.size()) {
    auto end = out.find('\0', pos);
    if (end == std::string::npos) end = out.size();
    std::string_view rec(out.data() + pos, end - pos);
    pos = end + 1;
    if (rec.empty()) continue;

    std::array<std::string_view, 5> head{};
    std::size_t cursor = 0;
    for (auto& field : head) {
      const auto nl = rec.find('\n', cursor);
      if (nl == std::string_view::npos) throw DataError("git log: truncated record");
      field = rec.substr(cursor, nl - cursor);
      cursor = nl + 1;
    }
    CommitRecord c;
    c.id = std::string(head[0]);
    c.parents = split_words(head[1]);
    c.author = std::string(head[2]);
    c.author_time = from_epoch(parse_epoch(head[3]));
    c.commit_time = from_epoch(parse_epoch(head[4]));
    c.message = trim_trailing_newlines(std::string(rec.substr(cursor)));
    commits.push_back(std::move(c));
  }
  return commits;
}

std::vector<FileDelta> Repository::compute_file_deltas(const CommitRecord& commit) const {
  if (commit.is_merge() && options_.merge_mode == MergeDiffMode::kSkip) return {};
  std::vector<std::string> args = {"diff-tree", "-r",        "-p", "-U0", "--no-color", "--no-commit-id",
                                   "--src-prefix=a/", "--dst-prefix=b/"};
  if (options_.rename_similarity > 0) {
    args.push_back("-M" + std::to_string(options_.rename_similarity) + "%");
  } else {
    args.push_back("--no-renames");
  }
  if (commit.is_root()) {
    args.push_back("--root");
    args.push_back(commit.id);
  } else {
    args.push_back(commit.parents.front());
    args.push_back(commit.id);
  }
  return parse_unified_diff(git(args));
}

std::vector<CommitRecord> Repository::mine(std::string_view branch) const {
  auto commits = scan_history(branch);
  parallel_for(commits.size(), options_.jobs,
               [&](std::size_t i) { commits[i].files = compute_file_deltas(commits[i]); });
  return commits;
}

const std::vector<LineOrigin>& Repository::blame_file(const std::string& commit_id,
                                                       const std::string& path) const {
  const std::string key = commit_id + '\0' + path;
  {
    std::shared_lock lock(blame_cache_->mutex);
    if (auto it = blame_cache_->files.find(key); it != blame_cache_->files.end()) return *it->second;
  }
  const auto exists = run_process({"git", "-C", root_.string(), "cat-file", "-e", commit_id + ":" + path});
  if (!exists.ok()) {
    throw DataError("path '" + path + "' does not exist at commit " + commit_id);
  }
  auto origins = std::make_shared<const std::vector<LineOrigin>>(
      parse_line_porcelain(git({"blame", "--line-porcelain", commit_id, "--", path})));
  std::unique_lock lock(blame_cache_->mutex);
  auto [it, inserted] = blame_cache_->files.emplace(key, std::move(origins));
  return *it->second;
}

std::map<int, LineOrigin> Repository::blame_lines(std::string_view commit_id, std::string_view path,
                                                  std::span<const int> lines) const {
  const auto& origins = blame_file(std::string(commit_id), std::string(path));
  std::map<int, LineOrigin> out;
  for (int line : lines) {
    if (line < 1 || static_cast<std::size_t>(line) > origins.size()) {
      throw DataError("line " + std::to_string(line) + " out of range for '" + std::string(path) + "' at " +
                      std::string(commit_id) + " (" + std::to_string(origins.size()) + " lines)");
    }
    out.emplace(line, origins[static_cast<std::size_t>(line) - 1]);
  }
  return out;
}

std::optional<std::string> Repository::file_at(std::string_view commit_id, std::string_view path) const {
  auto result = run_process({"git", "-C", root_.string(), "cat-file", "-p",
                             std::string(commit_id) + ":" + std::string(path)});
  if (!result.ok()) return std::nullopt;
  return std::move(result.out);
}

std::string Repository::diff_text(const CommitRecord& commit) const {
  std::vector<std::string> args = {"diff-tree", "-r", "-p", "--no-color", "--no-commit-id", "-M"};
  if (commit.is_root()) {
    args.push_back("--root");
  } else {
    args.push_back(commit.parents.front());
  }
  args.push_back(commit.id);
  return git(args);
}

std::vector<LineOrigin> parse_line_porcelain(std::string_view text) {
  std::vector<LineOrigin> origins;
  LineOrigin pending;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    if (line.front() == '\t') {
      if (!have_header) throw DataError("blame: content line without header");
      origins.push_back(pending);
      have_header = false;
      continue;
    }
    if (!have_header) {
      // "<hash> <orig-line> <final-line> [<group-size>]"
      const auto words = split_words(line);
      if (words.size() < 3) throw DataError("blame: malformed header '" + std::string(line) + "'");
      pending = LineOrigin{};
      pending.commit_id = words[0];
      pending.line = static_cast<int>(parse_epoch(words[1]));
      have_header = true;
      continue;
    }
    if (line.substr(0, 9) == "filename ") pending.path = unquote_git_path(line.substr(9));
  }
  return origins;
}

CommitIndex::CommitIndex(const std::vector<CommitRecord>& commits) {
  by_id_.reserve(commits.size());
  for (const auto& c : commits) by_id_.emplace(c.id, &c);
}

const CommitRecord* CommitIndex::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : it->second;
}

const CommitRecord& CommitIndex::at(std::string_view id) const {
  if (const auto* c = find(id)) return *c;
  throw DataError("unknown commit " + std::string(id));
}

std::string_view to_string(ChangeStatus status) {
  switch (status) {
    case ChangeStatus::kAdded: return "added";
    case ChangeStatus::kModified: return "modified";
    case ChangeStatus::kDeleted: return "deleted";
    case ChangeStatus::kRenamed: return "renamed";
  }
  return "modified";
}

ChangeStatus change_status_from_string(std::string_view text) {
  if (text == "added") return ChangeStatus::kAdded;
  if (text == "modified") return ChangeStatus::kModified;
  if (text == "deleted") return ChangeStatus::kDeleted;
  if (text == "renamed") return ChangeStatus::kRenamed;
  throw DataError("unknown change status '" + std::string(text) + "'");
}

}  // namespace jitlab::vcs
