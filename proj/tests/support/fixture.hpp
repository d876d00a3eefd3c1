#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "jitlab/core/time.hpp"
#include "jitlab/metrics/change_metrics.hpp"
#include "jitlab/curation/rule_catalog.hpp"
#include "jitlab/szz/issue.hpp"
#include "jitlab/szz/linkage.hpp"

namespace jitlab::test {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "jitlab");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// A scratch git repository whose commits carry pinned author and committer
// dates, so hashes are reproducible.
class GitRepo {
 public:
  explicit GitRepo(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  void write(const std::string& rel, const std::string& text) const;
  void remove(const std::string& rel) const;
  // Stages everything and commits; returns the new HEAD hash.
  std::string commit(const std::string& message, Timestamp when,
                     const std::string& author = "Alice <alice@example.com>") const;
  // Merges `branch` into the current branch with a merge commit.
  std::string merge(const std::string& branch, const std::string& message, Timestamp when) const;
  std::string git(const std::vector<std::string>& args, const std::map<std::string, std::string>& env = {}) const;

 private:
  std::filesystem::path root_;
};

Timestamp at(const std::string& iso);

// Lines joined with '\n' plus a trailing newline.
std::string lines(const std::vector<std::string>& text);

// The six-commit SZZ fixture. Issue 1 is fixed by c5, which rewrites
// lines last touched by c2 (a real change), c3 (a comment edit and a
// whitespace reformat) and c4 (authored after issue 1 was reported).
// Issue 2 is fixed by c6, which rewrites a line from c1.
struct SzzFixture {
  std::vector<std::string> c;  // c[1] .. c[6]; c[0] unused
  std::vector<szz::IssueRecord> issues;
  std::vector<std::string> patterns;
};
SzzFixture build_szz_fixture(const GitRepo& repo);

// A small curated corpus with planted violations for every filter stage:
// an extrinsic BIC, a mislabeled BIC, a churn of exactly 10,000, a change
// of 100 files, a BIC with no added lines, a BIC in the trailing partial
// period, a BIC reachable only through a suspicious fix and a churn of
// 9,999. Issue I7 has no verdict.
struct FilterCorpus {
  std::vector<metrics::ChangeMetrics> rows;
  std::vector<szz::BugLinkage> linkages;
  std::map<std::string, curation::Verdict> verdicts;
};
FilterCorpus filter_corpus();

// Rows spread evenly over `periods` three-month windows starting
// 2020-01-01, plus a short trailing tail, with is_bic drawn from
// logistic(slope * (log1p(la) - 2.5)). Every other property is noise.
std::vector<metrics::ChangeMetrics> synthetic_rows(int periods, int rows_per_period, double slope, unsigned seed);

// A git corpus for end-to-end runs: ~`commits` commits over two years by
// four authors across three subsystems. Every fix commit names an issue
// with "Closes-Bug: #N". Writes issues.csv, reviews.csv, labels.jsonl and
// jitlab.conf next to the repo and returns the config path.
std::filesystem::path make_corpus(const std::filesystem::path& dir, int commits, unsigned seed);

}  // namespace jitlab::test
