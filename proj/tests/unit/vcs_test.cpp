#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "fixture.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/vcs/commit_io.hpp"
#include "jitlab/vcs/diff_parser.hpp"
#include "jitlab/vcs/line_kind.hpp"
#include "jitlab/vcs/repository.hpp"

using namespace jitlab;
using namespace jitlab::vcs;
using jitlab::test::at;
using jitlab::test::GitRepo;
using jitlab::test::lines;
using jitlab::test::TempDir;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class RepoTest : public ::testing::Test {
 protected:
  TempDir dir_{"jitlab-vcs"};
  GitRepo repo_{dir_.path() / "repo"};
};

}  // namespace

TEST(LineKind, ClassifiesByExtension) {
  LineClassifier c(comment_style_for("a.cpp"));
  EXPECT_EQ(c.classify("int x = 1;"), LineKind::kCode);
  EXPECT_EQ(c.classify("   // note"), LineKind::kComment);
  EXPECT_EQ(c.classify("  "), LineKind::kWhitespace);
  EXPECT_EQ(c.classify("/* start"), LineKind::kComment);
  EXPECT_EQ(c.classify(" * middle"), LineKind::kComment);
  EXPECT_EQ(c.classify(" end */"), LineKind::kComment);
  EXPECT_EQ(c.classify("x = 1; // trailing"), LineKind::kCode);
  LineClassifier py(comment_style_for("tool.py"));
  EXPECT_EQ(py.classify("# hash comment"), LineKind::kComment);
  LineClassifier unknown(comment_style_for("notes.xyz"));
  EXPECT_EQ(unknown.classify("# not a comment here"), LineKind::kCode);
}

TEST(LineKind, HunkPairingMarksCosmeticEdits) {
  std::vector<LineKind> removed_kinds, added_kinds;
  classify_hunk(comment_style_for("a.c"), {"int d = 4;", "x = f(y); // old"},
                {"int d  =  4;", "x = f(y); // new words"}, removed_kinds, added_kinds);
  EXPECT_EQ(added_kinds, (std::vector<LineKind>{LineKind::kWhitespace, LineKind::kComment}));
  EXPECT_EQ(removed_kinds, (std::vector<LineKind>{LineKind::kWhitespace, LineKind::kComment}));
}

TEST(DiffParser, ParsesHunksAndLineNumbers) {
  const std::string diff =
      "diff --git a/src/x.c b/src/x.c\n"
      "index 1111111..2222222 100644\n"
      "--- a/src/x.c\n"
      "+++ b/src/x.c\n"
      "@@ -2,2 +2,2 @@\n"
      "-int b = 2;\n"
      "-int c = 3;\n"
      "+int b = 20;\n"
      "+int c = 30;\n"
      "@@ -9,0 +10,1 @@\n"
      "+// appended\n";
  const auto deltas = parse_unified_diff(diff);
  ASSERT_EQ(deltas.size(), 1u);
  const auto& d = deltas[0];
  EXPECT_EQ(d.path, "src/x.c");
  EXPECT_EQ(d.lines_added, 3);
  EXPECT_EQ(d.lines_deleted, 2);
  EXPECT_EQ(d.deleted_line_numbers, (std::vector<int>{2, 3}));
  EXPECT_EQ(d.added_line_numbers, (std::vector<int>{2, 3, 10}));
  EXPECT_EQ(d.line_kinds.at(10), LineKind::kComment);
  EXPECT_EQ(d.line_kinds.at(2), LineKind::kCode);
}

TEST(DiffParser, UnquotesPaths) { EXPECT_EQ(unquote_git_path("\"a\\tb\""), "a\tb"); }

TEST_F(RepoTest, EmptyRepositoryHasNoCommits) {
  const auto r = Repository::open(repo_.root());
  EXPECT_TRUE(r.scan_history("HEAD").empty());
}

TEST_F(RepoTest, UnreadableRepositoryAndUnknownBranchFail) {
  EXPECT_THROW(Repository::open(dir_.path() / "missing"), DataError);
  repo_.write("a.txt", "x\n");
  repo_.commit("one", at("2021-01-01"));
  EXPECT_THROW(Repository::open(repo_.root()).scan_history("no-such-branch"), DataError);
}

TEST_F(RepoTest, LinearHistoryRootFirst) {
  std::vector<std::string> ids;
  for (int i = 0; i < 3; ++i) {
    repo_.write("f.txt", std::to_string(i) + "\n");
    ids.push_back(repo_.commit("c" + std::to_string(i), at("2021-01-0" + std::to_string(i + 1))));
  }
  const auto r = Repository::open(repo_.root());
  const auto commits = r.scan_history("HEAD");
  ASSERT_EQ(commits.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(commits[i].id, ids[i]);
  EXPECT_TRUE(commits[0].is_root());
  EXPECT_EQ(commits[2].parents, (std::vector<std::string>{ids[1]}));
  EXPECT_EQ(commits[1].author, "Alice <alice@example.com>");
  EXPECT_EQ(commits[1].author_time, at("2021-01-02"));
  EXPECT_EQ(commits[1].message, "c1");
}

TEST_F(RepoTest, MergeListsBothParents) {
  repo_.write("a.txt", "base\n");
  const auto base = repo_.commit("base", at("2021-01-01"));
  repo_.git({"checkout", "-q", "-b", "side"});
  repo_.write("b.txt", "side\n");
  const auto side = repo_.commit("side", at("2021-01-02"));
  repo_.git({"checkout", "-q", "main"});
  repo_.write("a.txt", "main\n");
  const auto main = repo_.commit("main", at("2021-01-03"));
  const auto merge = repo_.merge("side", "merge side", at("2021-01-04"));
  const auto r = Repository::open(repo_.root());
  const auto commits = r.mine("HEAD");
  ASSERT_EQ(commits.size(), 4u);
  const auto& m = commits.back();
  EXPECT_EQ(m.id, merge);
  EXPECT_EQ(m.parents, (std::vector<std::string>{main, side}));
  // First-parent diff: the merge brings in b.txt.
  ASSERT_EQ(m.files.size(), 1u);
  EXPECT_EQ(m.files[0].path, "b.txt");
  EXPECT_EQ(commits.front().id, base);
}

TEST_F(RepoTest, FileDeltasCountAndClassify) {
  std::vector<std::string> ten;
  for (int i = 1; i <= 10; ++i) ten.push_back("int v" + std::to_string(i) + " = " + std::to_string(i) + ";");
  repo_.write("src/a.c", lines(ten));
  repo_.commit("add", at("2021-02-01"));
  auto changed = ten;
  changed[3] = "int v4 = 40;";
  changed[4] = "int v5 = 50;";
  repo_.write("src/a.c", lines(changed));
  repo_.commit("replace", at("2021-02-02"));
  auto commented = changed;
  commented.push_back("// trailing remark");
  repo_.write("src/a.c", lines(commented));
  repo_.commit("comment", at("2021-02-03"));

  const auto commits = Repository::open(repo_.root()).mine("HEAD");
  ASSERT_EQ(commits.size(), 3u);
  ASSERT_EQ(commits[0].files.size(), 1u);
  EXPECT_EQ(commits[0].files[0].lines_added, 10);
  EXPECT_EQ(commits[0].files[0].lines_deleted, 0);
  EXPECT_EQ(commits[0].files[0].status, ChangeStatus::kAdded);
  const auto& rep = commits[1].files[0];
  EXPECT_EQ(rep.lines_added, 2);
  EXPECT_EQ(rep.lines_deleted, 2);
  EXPECT_EQ(rep.deleted_line_numbers, (std::vector<int>{4, 5}));
  EXPECT_EQ(commits[2].files[0].line_kinds.at(11), LineKind::kComment);
  for (const auto& c : commits)
    for (const auto& d : c.files) {
      EXPECT_EQ(d.lines_added, static_cast<int>(d.added_line_numbers.size()));
      EXPECT_EQ(d.lines_deleted, static_cast<int>(d.deleted_line_numbers.size()));
    }
}

TEST_F(RepoTest, BinaryFilesAreFlagged) {
  repo_.write("blob.bin", std::string("\0\1\2\3binary\0", 11));
  repo_.commit("bin", at("2021-03-01"));
  const auto commits = Repository::open(repo_.root()).mine("HEAD");
  ASSERT_EQ(commits[0].files.size(), 1u);
  EXPECT_TRUE(commits[0].files[0].binary);
  EXPECT_TRUE(commits[0].files[0].added_line_numbers.empty());
}

TEST_F(RepoTest, DeltasReplayParentIntoChild) {
  repo_.write("t.txt", lines({"a", "b", "c", "d", "e", "f"}));
  const auto first = repo_.commit("one", at("2021-04-01"));
  repo_.write("t.txt", lines({"a", "B", "c", "x", "y", "e", "f", "g"}));
  const auto second = repo_.commit("two", at("2021-04-02"));
  const auto r = Repository::open(repo_.root());
  const auto commits = r.mine("HEAD");
  const auto& d = commits[1].files.at(0);
  const auto parent = split_lines(*r.file_at(first, "t.txt"));
  const auto child = split_lines(*r.file_at(second, "t.txt"));
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (!std::binary_search(d.deleted_line_numbers.begin(), d.deleted_line_numbers.end(), static_cast<int>(i + 1)))
      kept.push_back(parent[i]);
  std::vector<std::string> rebuilt;
  std::size_t next_kept = 0;
  for (std::size_t i = 0; i < child.size(); ++i) {
    if (std::binary_search(d.added_line_numbers.begin(), d.added_line_numbers.end(), static_cast<int>(i + 1)))
      rebuilt.push_back(child[i]);
    else
      rebuilt.push_back(kept.at(next_kept++));
  }
  EXPECT_EQ(next_kept, kept.size());
  EXPECT_EQ(rebuilt, child);
}

TEST_F(RepoTest, BlameOrigins) {
  repo_.write("f.c", lines({"int a;", "int b;"}));
  const auto a = repo_.commit("A", at("2021-05-01"));
  repo_.write("f.c", lines({"int a;", "int b2;"}));
  const auto b = repo_.commit("B", at("2021-05-02"));
  repo_.write("f.c", lines({"int a;", "int b3;"}));
  const auto c = repo_.commit("C", at("2021-05-03"));
  const auto r = Repository::open(repo_.root());
  const std::vector<int> one = {1}, two = {2};
  EXPECT_EQ(r.blame_lines(a, "f.c", one).at(1).commit_id, a);  // self-origin
  EXPECT_EQ(r.blame_lines(b, "f.c", one).at(1).commit_id, a);  // untouched by B
  EXPECT_EQ(r.blame_lines(c, "f.c", two).at(2).commit_id, c);  // modified every time
  EXPECT_EQ(r.blame_lines(c, "f.c", two), r.blame_lines(c, "f.c", two));
  EXPECT_THROW(r.blame_lines(c, "nope.c", one), DataError);
  const std::vector<int> far = {9};
  EXPECT_THROW(r.blame_lines(c, "f.c", far), DataError);
}

TEST_F(RepoTest, ScanCountMatchesRevList) {
  for (int i = 0; i < 5; ++i) {
    repo_.write("f" + std::to_string(i % 2) + ".txt", std::to_string(i) + "\n");
    repo_.commit("c", at("2021-06-0" + std::to_string(i + 1)));
  }
  auto count = repo_.git({"rev-list", "--count", "HEAD"});
  EXPECT_EQ(Repository::open(repo_.root()).scan_history("HEAD").size(), std::stoul(count));
}

TEST_F(RepoTest, CommitsRoundTripThroughJsonl) {
  repo_.write("src/a.py", lines({"x = 1", "# c"}));
  repo_.commit("one", at("2021-07-01"));
  repo_.write("src/a.py", lines({"x = 2", "# c", "y = 3"}));
  repo_.commit("two\n\nbody", at("2021-07-02"), "Bob <bob@example.com>");
  const auto commits = Repository::open(repo_.root()).mine("HEAD");
  write_commits(dir_.path() / "c.jsonl", commits);
  EXPECT_EQ(read_commits(dir_.path() / "c.jsonl"), commits);
}
