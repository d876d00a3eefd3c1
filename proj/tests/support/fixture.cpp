#include "fixture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "jitlab/core/subprocess.hpp"

namespace fs = std::filesystem;

namespace jitlab::test {

TempDir::TempDir(const std::string& prefix) {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = fs::temp_directory_path() / (prefix + "-" + std::to_string(rd()));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::map<std::string, std::string> identity_env(const std::string& author, Timestamp when) {
  const auto lt = author.find('<');
  const auto gt = author.find('>');
  std::string name = author.substr(0, lt == std::string::npos ? author.size() : lt);
  while (!name.empty() && name.back() == ' ') name.pop_back();
  const std::string email = lt == std::string::npos ? "" : author.substr(lt + 1, gt - lt - 1);
  const std::string date = "@" + std::to_string(to_epoch(when)) + " +0000";
  return {{"GIT_AUTHOR_NAME", name},          {"GIT_AUTHOR_EMAIL", email},
          {"GIT_COMMITTER_NAME", name},       {"GIT_COMMITTER_EMAIL", email},
          {"GIT_AUTHOR_DATE", date},          {"GIT_COMMITTER_DATE", date}};
}

}  // namespace

GitRepo::GitRepo(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_);
  git({"init", "-q"});
  git({"symbolic-ref", "HEAD", "refs/heads/main"});
  git({"config", "commit.gpgsign", "false"});
  git({"config", "core.autocrlf", "false"});
}

void GitRepo::write(const std::string& rel, const std::string& text) const { write_text(root_ / rel, text); }

void GitRepo::remove(const std::string& rel) const { fs::remove(root_ / rel); }

std::string GitRepo::git(const std::vector<std::string>& args, const std::map<std::string, std::string>& env) const {
  std::vector<std::string> argv = {"git", "-C", root_.string()};
  argv.insert(argv.end(), args.begin(), args.end());
  auto full_env = env;
  full_env.emplace("GIT_CONFIG_GLOBAL", "/dev/null");
  full_env.emplace("GIT_CONFIG_NOSYSTEM", "1");
  const auto result = run_process(argv, full_env);
  if (!result.ok()) throw std::runtime_error("git " + args.front() + " failed: " + result.err);
  return result.out;
}

std::string GitRepo::commit(const std::string& message, Timestamp when, const std::string& author) const {
  git({"add", "-A"});
  git({"commit", "-q", "--allow-empty", "-m", message}, identity_env(author, when));
  auto head = git({"rev-parse", "HEAD"});
  while (!head.empty() && head.back() == '\n') head.pop_back();
  return head;
}

std::string GitRepo::merge(const std::string& branch, const std::string& message, Timestamp when) const {
  git({"merge", "-q", "--no-ff", "-m", message, branch}, identity_env("Alice <alice@example.com>", when));
  auto head = git({"rev-parse", "HEAD"});
  while (!head.empty() && head.back() == '\n') head.pop_back();
  return head;
}

Timestamp at(const std::string& iso) { return parse_timestamp(iso); }

std::string lines(const std::vector<std::string>& text) {
  std::string out;
  for (const auto& l : text) out += l + "\n";
  return out;
}

SzzFixture build_szz_fixture(const GitRepo& repo) {
  SzzFixture f;
  f.c.resize(7);
  repo.write("src/app.c", lines({"int a = 1;", "int b = 2;", "int c = 3;", "int d = 4;", "/* note */"}));
  f.c[1] = repo.commit("Add app", at("2020-01-01T10:00:00Z"));
  repo.write("src/app.c", lines({"int a = 1;", "int b = 20;", "int c = 3;", "int d = 4;", "/* note */"}));
  f.c[2] = repo.commit("Tune b", at("2020-01-10T10:00:00Z"), "Bob <bob@example.com>");
  repo.write("src/app.c", lines({"int a = 1;", "int b = 20;", "int c = 3;", "int d  =  4;", "/* note, updated */"}));
  f.c[3] = repo.commit("Reformat and reword", at("2020-01-20T10:00:00Z"));
  repo.write("src/app.c", lines({"int a = 1;", "int b = 20;", "int c = 30;", "int d  =  4;", "/* note, updated */"}));
  f.c[4] = repo.commit("Tune c", at("2020-02-10T10:00:00Z"), "Carol <carol@example.com>");
  repo.write("src/app.c", lines({"int a = 1;", "int b = 2;", "int c = 3;", "int d = 5;", "/* fixed */"}));
  f.c[5] = repo.commit("Restore values\n\nCloses-Bug: #1", at("2020-02-15T10:00:00Z"));
  repo.write("src/app.c", lines({"int a = 100;", "int b = 2;", "int c = 3;", "int d = 5;", "/* fixed */"}));
  f.c[6] = repo.commit("Fix a\n\nCloses-Bug: #2", at("2020-03-01T10:00:00Z"), "Bob <bob@example.com>");

  f.issues = {{"1", at("2020-02-01T00:00:00Z"), "Wrong b", "b and c are off", "rep"},
              {"2", at("2020-02-20T00:00:00Z"), "Wrong a", "a is off", "rep"}};
  f.patterns = {"Closes-Bug: (#?\\d+)"};
  return f;
}

FilterCorpus filter_corpus() {
  FilterCorpus f;
  auto row = [&](const std::string& id, const std::string& when, long long la, long long ld, long long nf) {
    metrics::ChangeMetrics r;
    r.change_id = id;
    r.author = "dev@example.com";
    r.time = at(when);
    r.la = la;
    r.ld = ld;
    r.nf = r.nd = r.ns = nf;
    f.rows.push_back(r);
  };
  row("n0", "2020-01-01", 5, 0, 1);
  row("r1", "2020-01-10", 10, 2, 1);
  row("r2", "2020-02-01", 3, 0, 1);
  row("r3", "2020-02-15", 4, 0, 1);
  row("r4", "2020-03-01", 7, 0, 1);
  row("r5", "2020-03-10", 9000, 1000, 2);
  row("r6", "2020-04-05", 50, 0, 100);
  row("r7", "2020-04-20", 0, 5, 1);
  row("r9", "2020-05-01", 8, 0, 1);
  row("r10", "2020-05-20", 9000, 999, 3);
  row("n1", "2020-06-01", 20000, 0, 1);
  row("n2", "2020-06-10", 0, 3, 1);
  row("r8", "2020-07-15", 6, 0, 1);
  row("n3", "2020-08-15", 2, 0, 1);

  auto link = [&](const std::string& issue, std::vector<std::string> bics, bool suspicious = false) {
    szz::BugLinkage l;
    l.issue_id = issue;
    l.bfc_ids = {"fix-" + issue};
    for (const auto& b : bics) l.bic_candidates.push_back({b, {}, {}, {}});
    l.suspicious = suspicious;
    f.linkages.push_back(l);
  };
  link("I1", {"r1", "r2"});
  link("I2", {"r3"});
  link("I3", {"r4"});
  link("I4", {"r5", "r6"});
  link("I5", {"r7", "r8"});
  link("I6", {"r9"}, true);
  link("I7", {"r2", "r10"});
  using curation::Verdict;
  f.verdicts = {{"I1", Verdict::kIntrinsic}, {"I2", Verdict::kExtrinsic},  {"I3", Verdict::kMislabeled},
                {"I4", Verdict::kIntrinsic}, {"I5", Verdict::kIntrinsic}, {"I6", Verdict::kIntrinsic}};
  return f;
}

std::vector<metrics::ChangeMetrics> synthetic_rows(int periods, int rows_per_period, double slope, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const Timestamp origin = at("2020-01-01");

  std::vector<metrics::ChangeMetrics> rows;
  auto make_row = [&](Timestamp t, std::size_t index) {
    metrics::ChangeMetrics r;
    r.change_id = "c" + std::to_string(index);
    r.author = "dev" + std::to_string(index % 7) + "@example.com";
    r.time = t;
    r.la = static_cast<long long>(std::floor(std::exp(2.5 + 1.2 * normal(rng))));
    r.ld = static_cast<long long>(std::floor(std::exp(1.5 + 1.2 * normal(rng))));
    r.ns = 1 + static_cast<long long>(3 * unit(rng));
    r.nd = r.ns + static_cast<long long>(3 * unit(rng));
    r.nf = r.nd + static_cast<long long>(5 * unit(rng));
    r.ent = unit(rng);
    r.nuc = static_cast<long long>(20 * expo(rng));
    r.ndev = static_cast<long long>(5 * expo(rng));
    r.age = 30 * expo(rng);
    r.aexp = 100 * expo(rng);
    r.arexp = 20 * expo(rng);
    r.asexp = 40 * expo(rng);
    r.asawr = unit(rng);
    r.rexp = 100 * expo(rng);
    r.rrexp = 20 * expo(rng);
    r.rsexp = 40 * expo(rng);
    r.rsawr = unit(rng);
    r.nrev = 1 + static_cast<long long>(4 * expo(rng));
    r.app = 1 + static_cast<long long>(3 * unit(rng));
    r.hcmt = static_cast<long long>(6 * expo(rng));
    r.rtime = 3 * expo(rng);
    const double eta = -0.8 + slope * (std::log1p(static_cast<double>(r.la)) - 2.5);
    r.is_bic = unit(rng) < 1.0 / (1.0 + std::exp(-eta));
    return r;
  };

  for (int p = 0; p < periods; ++p) {
    const auto start = add_months(origin, 3 * p);
    const double span = static_cast<double>((add_months(origin, 3 * (p + 1)) - start).count());
    for (int i = 0; i < rows_per_period; ++i) {
      const auto offset = std::chrono::seconds{static_cast<long long>(span * (i + 0.5) / rows_per_period)};
      rows.push_back(make_row(start + offset, rows.size()));
    }
  }
  // A trailing partial window that stratification must drop.
  const auto tail = add_months(origin, 3 * periods);
  for (int i = 0; i < 5; ++i) rows.push_back(make_row(tail + std::chrono::hours{24 * (i + 1)}, rows.size()));
  return rows;
}

fs::path make_corpus(const fs::path& dir, int commits, unsigned seed) {
  std::mt19937 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  auto chance = [&](double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; };

  GitRepo repo(dir / "repo");
  const std::vector<std::string> authors = {"Alice <alice@example.com>", "Bob <bob@example.com>",
                                            "Carol <carol@example.com>", "Dan <dan@example.com>"};
  const std::vector<std::string> subsystems = {"core", "net", "ui"};

  struct Line {
    std::string text;
    int origin;
  };
  std::map<std::string, std::vector<Line>> files;
  for (const auto& s : subsystems)
    for (int k = 0; k < 3; ++k) files[s + "/mod" + std::to_string(k) + ".py"] = {};
  std::vector<std::string> paths;
  for (const auto& [p, _] : files) paths.push_back(p);

  struct Issue {
    int id;
    Timestamp reported;
    std::string kind;
  };
  std::vector<Issue> issues;
  std::vector<int> buggy;  // commit indices with an unfixed planted bug
  std::vector<std::string> hashes;
  std::ostringstream reviews;
  reviews << "change_id,created_time,approved_time,revisions,voters,human_nonowner_comments,reviewers\n";

  const Timestamp start = at("2020-01-06T09:00:00Z");
  const double step = 730.0 * 86400.0 / commits;
  int next_issue = 1;

  for (int c = 0; c < commits; ++c) {
    const auto when = start + std::chrono::seconds{static_cast<long long>(step * c + pick(3600))};
    const auto& author = authors[static_cast<std::size_t>(pick(4))];
    std::string message;

    std::vector<std::pair<std::string, int>> fixable;
    for (int b : buggy)
      for (const auto& [p, ls] : files)
        for (std::size_t i = 0; i < ls.size(); ++i)
          if (ls[i].origin == b) fixable.emplace_back(p, static_cast<int>(i));

    if (c > 10 && !fixable.empty() && chance(0.3)) {
      const auto [path, idx] = fixable[static_cast<std::size_t>(pick(static_cast<int>(fixable.size())))];
      const int bug_commit = files[path][static_cast<std::size_t>(idx)].origin;
      files[path][static_cast<std::size_t>(idx)] = {"value_" + std::to_string(c) + " = fixed(" +
                                                        std::to_string(c) + ")",
                                                    c};
      buggy.erase(std::remove(buggy.begin(), buggy.end(), bug_commit), buggy.end());
      const int id = next_issue++;
      const std::string kind = id % 7 == 3 ? "extrinsic" : id % 11 == 5 ? "mislabeled" : "intrinsic";
      issues.push_back({id, when - std::chrono::hours{36}, kind});
      message = "Fix failure in " + path + "\n\nCloses-Bug: #" + std::to_string(id);
    } else {
      const int touched = 1 + pick(3);
      const bool big = chance(0.35);
      for (int t = 0; t < touched; ++t) {
        auto& ls = files[paths[static_cast<std::size_t>(pick(static_cast<int>(paths.size())))]];
        const int add = big ? 6 + pick(30) : 1 + pick(4);
        for (int a = 0; a < add; ++a) {
          const auto pos = ls.empty() ? 0 : static_cast<std::size_t>(pick(static_cast<int>(ls.size()) + 1));
          ls.insert(ls.begin() + static_cast<std::ptrdiff_t>(pos),
                    Line{"value_" + std::to_string(c) + "_" + std::to_string(a) + " = " + std::to_string(pick(1000)), c});
        }
        if (!ls.empty() && chance(0.4)) {
          const auto pos = static_cast<std::size_t>(pick(static_cast<int>(ls.size())));
          ls[pos] = {"# note " + std::to_string(c), c};
        }
        if (ls.size() > 3 && chance(0.3)) ls.erase(ls.begin() + pick(static_cast<int>(ls.size())));
      }
      if (big && chance(0.7)) buggy.push_back(c);
      message = "Change " + std::to_string(c);
    }

    for (const auto& [p, ls] : files) {
      if (ls.empty()) continue;
      std::string text;
      for (const auto& l : ls) text += l.text + "\n";
      repo.write(p, text);
    }
    hashes.push_back(repo.commit(message, when, author));

    if (chance(0.85)) {
      const auto created = when - std::chrono::hours{24 + pick(72)};
      const std::string reviewer = authors[static_cast<std::size_t>(pick(4))];
      reviews << hashes.back() << "," << format_timestamp(created) << "," << format_timestamp(when) << ","
              << 1 + pick(4) << ",\"" << reviewer << "\"," << pick(6) << ",\"" << reviewer << "\"\n";
    }
  }

  std::ostringstream issue_csv;
  issue_csv << "issue_id,reported_time,title,description,reporter\n";
  std::ostringstream labels;
  const std::map<std::string, std::string> rule_of = {{"intrinsic", "I1"}, {"extrinsic", "E1"}, {"mislabeled", "M1"}};
  for (const auto& i : issues) {
    issue_csv << i.id << "," << format_timestamp(i.reported) << ",Failure " << i.id
              << ",\"Observed a failure, see logs\",reporter" << i.id % 3 << "\n";
    for (const std::string rater : {"r1", "r2"}) {
      labels << "{\"issue_id\":\"" << i.id << "\",\"rater\":\"" << rater << "\",\"verdict\":\"" << i.kind
             << "\",\"rule_id\":\"" << rule_of.at(i.kind) << "\",\"rationale\":\"\",\"labeled_time\":\"2022-01-01T00:00:00Z\",\"revision\":1}\n";
    }
  }
  write_text(dir / "issues.csv", issue_csv.str());
  write_text(dir / "reviews.csv", reviews.str());
  write_text(dir / "labels.jsonl", labels.str());
  write_text(dir / "jitlab.conf",
             "repo = repo\n"
             "issues = issues.csv\n"
             "reviews = reviews.csv\n"
             "labels = labels.jsonl\n"
             "pattern = Closes-Bug: (#?\\d+)\n"
             "output = out\n"
             "months = 3,6\n"
             "scheme = both\n"
             "jobs = 2\n");
  return dir / "jitlab.conf";
}

}  // namespace jitlab::test
