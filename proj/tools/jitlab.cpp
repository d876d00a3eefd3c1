#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <iostream>

#include "jitlab/app/config.hpp"
#include "jitlab/app/curation_api.hpp"
#include "jitlab/app/pipeline.hpp"
#include "jitlab/app/stages.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/curation/label_store.hpp"
#include "jitlab/szz/linkage_io.hpp"
#include "jitlab/vcs/commit_io.hpp"
#include "jitlab/vcs/repository.hpp"

namespace fs = std::filesystem;
using namespace jitlab;

namespace {

struct Overrides {
  std::string config_file;
  std::vector<std::string> settings;  // key=value
  std::string repo, branch, issues, reviews, labels, suspicious, output;
  std::vector<std::string> patterns;
  std::string months, scheme, date_basis;
  bool drop_mislabeled = false, no_cosmetic = false, no_date = false;
  std::optional<long long> churn, files;
  std::optional<double> rho, r2;
  std::optional<int> df;
  std::optional<unsigned> jobs;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config_file, "key = value configuration file");
  cmd->add_option("--set", o.settings, "override any setting: key=value (repeatable)");
  cmd->add_option("--repo", o.repo, "repository path");
  cmd->add_option("--branch", o.branch, "branch or revision to mine");
  cmd->add_option("--issues", o.issues, "issue file (CSV or newline JSON)");
  cmd->add_option("--reviews", o.reviews, "review records (CSV or newline JSON)");
  cmd->add_option("--labels", o.labels, "label store log or exported labels");
  cmd->add_option("--suspicious", o.suspicious, "suspicious-change annotation file");
  cmd->add_option("-o,--output", o.output, "output directory");
  cmd->add_option("--pattern", o.patterns, "issue-id pattern; capture group 1 is the id (repeatable)");
  cmd->add_option("--months", o.months, "period length(s): 3, 6 or 3,6");
  cmd->add_option("--scheme", o.scheme, "short, long or both");
  cmd->add_option("--date-basis", o.date_basis, "author or commit time for the date filter");
  cmd->add_flag("--drop-mislabeled", o.drop_mislabeled, "also unlink BICs of mislabeled issues");
  cmd->add_flag("--no-cosmetic-filter", o.no_cosmetic, "keep comment/whitespace-only candidates");
  cmd->add_flag("--no-date-filter", o.no_date, "keep candidates dated after the report");
  cmd->add_option("--churn", o.churn, "churn threshold (la + ld)");
  cmd->add_option("--files", o.files, "file-count threshold (nf)");
  cmd->add_option("--rho", o.rho, "Spearman |rho| threshold");
  cmd->add_option("--r2", o.r2, "redundancy R^2 threshold");
  cmd->add_option("--df", o.df, "spline degrees of freedom");
  cmd->add_option("-j,--jobs", o.jobs, "worker threads");
}

app::PipelineConfig build_config(const Overrides& o) {
  app::PipelineConfig c = o.config_file.empty() ? app::PipelineConfig{} : app::load_config(o.config_file);
  auto set = [&](const std::string& key, const std::string& value) { app::apply_setting(c, key, value); };
  for (const auto& s : o.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
    set(s.substr(0, eq), s.substr(eq + 1));
  }
  if (!o.repo.empty()) set("repo", o.repo);
  if (!o.branch.empty()) set("branch", o.branch);
  if (!o.issues.empty()) set("issues", o.issues);
  if (!o.reviews.empty()) set("reviews", o.reviews);
  if (!o.labels.empty()) set("labels", o.labels);
  if (!o.suspicious.empty()) set("suspicious", o.suspicious);
  if (!o.output.empty()) set("output", o.output);
  if (!o.patterns.empty()) {
    c.patterns.clear();
    for (const auto& p : o.patterns) set("pattern", p);
  }
  if (!o.months.empty()) set("months", o.months);
  if (!o.scheme.empty()) set("scheme", o.scheme);
  if (!o.date_basis.empty()) set("date_basis", o.date_basis);
  if (o.drop_mislabeled) c.drop_mislabeled = true;
  if (o.no_cosmetic) c.cosmetic_filter = false;
  if (o.no_date) c.date_filter = false;
  if (o.churn) c.churn_threshold = *o.churn;
  if (o.files) c.files_threshold = *o.files;
  if (o.rho) c.rho_threshold = *o.rho;
  if (o.r2) c.r2_threshold = *o.r2;
  if (o.df) c.spline_df = *o.df;
  if (o.jobs) c.jobs = *o.jobs;
  app::validate(c);
  return c;
}

void print_manifest(const app::RunManifest& m) {
  for (const auto& s : m.stages) {
    std::cout << s.name << (s.reused ? " (reused)" : "") << "\n";
    for (const auto& [path, sum] : s.outputs) std::cout << "  " << path << "  " << sum.substr(0, 12) << "\n";
  }
}

fs::path store_path(const app::PipelineConfig& c, const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (c.labels) return *c.labels;
  return c.output / "labels.events.jsonl";
}

std::set<std::string> issue_ids(const std::vector<szz::IssueRecord>& issues) {
  std::set<std::string> ids;
  for (const auto& i : issues) ids.insert(i.issue_id);
  return ids;
}

int serve(const app::PipelineConfig& c, const std::string& store_file, const std::string& host, int port) {
  auto issues = szz::read_issues(c.issues);
  curation::LabelStore store(issue_ids(issues), store_path(c, store_file));

  std::map<std::string, std::vector<std::string>> bfcs;
  const auto raw = c.output / app::paths::kRawLinkages;
  if (fs::exists(raw)) {
    for (const auto& l : szz::read_linkages(raw)) bfcs[l.issue_id] = l.bfc_ids;
  } else {
    spdlog::warn("{} not found; tasks will carry no BFC diffs (run `link` first)", raw.string());
  }
  app::CurationService::DiffProvider diff;
  std::shared_ptr<std::vector<vcs::CommitRecord>> commits;
  std::shared_ptr<vcs::CommitIndex> index;
  std::shared_ptr<vcs::Repository> repo;
  const auto commits_file = c.output / app::paths::kCommits;
  if (!c.repo.empty() && fs::exists(commits_file)) {
    commits = std::make_shared<std::vector<vcs::CommitRecord>>(vcs::read_commits(commits_file));
    index = std::make_shared<vcs::CommitIndex>(*commits);
    repo = std::make_shared<vcs::Repository>(vcs::Repository::open(c.repo));
    diff = [commits, index, repo](const std::string& id) { return repo->diff_text(index->at(id)); };
  }
  app::CurationService service(store, std::move(issues), std::move(bfcs), diff);
  spdlog::info("curation API listening on http://{}:{}/api", host, port);
  app::serve_curation_api(service, host, port);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("jitlab"));
  CLI::App cli{"Just-in-time defect prediction lab"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", std::string(app::tool_version()));
  bool verbose = false, quiet = false;
  cli.add_flag("-v,--verbose", verbose, "debug logging");
  cli.add_flag("-q,--quiet", quiet, "warnings and errors only");

  Overrides o;
  std::function<int()> action;

  const std::vector<std::pair<std::string, std::string>> stage_commands = {
      {"mine", "mine commits and file deltas to newline JSON"},
      {"link", "link issues to bug-fixing commits"},
      {"szz", "trace and filter bug-introducing candidates"},
      {"metrics", "compute change metrics"},
      {"filter", "apply filters F0-F5 and write the ledger"},
      {"stratify", "summarise the period partition"},
      {"train", "fit one model per training period"},
      {"evaluate", "score models on later periods"},
      {"importance", "family Wald importance per period"},
      {"stability", "FISDiff and adjacent-period AUC deltas"},
      {"stats", "nonparametric comparisons across bug types"},
  };
  for (const auto& [name, help] : stage_commands) {
    auto* cmd = cli.add_subcommand(name, help);
    add_common(cmd, o);
    const std::string stage = name == "train" ? "fit" : name;
    cmd->callback([&, stage] {
      action = [&, stage] {
        app::RunOptions options;
        options.only = {stage};
        options.force = true;
        print_manifest(app::run_pipeline(build_config(o), options));
        return 0;
      };
    });
  }

  auto* run = cli.add_subcommand("run", "run every stage, reusing unchanged ones");
  add_common(run, o);
  bool force = false;
  run->add_flag("--force", force, "recompute every stage");
  run->callback([&] {
    action = [&] {
      app::RunOptions options;
      options.force = force;
      print_manifest(app::run_pipeline(build_config(o), options));
      return 0;
    };
  });

  auto* label = cli.add_subcommand("label", "label store: import, export, serve");
  label->require_subcommand(1);
  std::string store_file, import_file, export_file, host = "127.0.0.1";
  int port = 8080;
  auto* import_cmd = label->add_subcommand("import", "record exported labels into the store");
  add_common(import_cmd, o);
  import_cmd->add_option("file", import_file, "labels (newline JSON)")->required();
  import_cmd->add_option("--store", store_file, "store event log");
  import_cmd->callback([&] {
    action = [&] {
      const auto c = build_config(o);
      curation::LabelStore store(issue_ids(szz::read_issues(c.issues)), store_path(c, store_file));
      const auto records = curation::read_labels(import_file);
      store.import_labels(records);
      std::cout << "imported " << records.size() << " label(s)\n";
      return 0;
    };
  });
  auto* export_cmd = label->add_subcommand("export", "write the store's current labels");
  add_common(export_cmd, o);
  export_cmd->add_option("file", export_file, "destination (newline JSON)")->required();
  export_cmd->add_option("--store", store_file, "store event log");
  export_cmd->callback([&] {
    action = [&] {
      const auto c = build_config(o);
      curation::LabelStore store(issue_ids(szz::read_issues(c.issues)), store_path(c, store_file));
      curation::write_labels(export_file, store.labels());
      return 0;
    };
  });
  auto* serve_cmd = label->add_subcommand("serve", "serve the curation HTTP JSON API");
  add_common(serve_cmd, o);
  serve_cmd->add_option("--store", store_file, "store event log");
  serve_cmd->add_option("--host", host, "bind address");
  serve_cmd->add_option("--port", port, "port");
  serve_cmd->callback([&] { action = [&] { return serve(build_config(o), store_file, host, port); }; });

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : 1;
  }
  spdlog::set_level(verbose ? spdlog::level::debug : quiet ? spdlog::level::warn : spdlog::level::info);

  try {
    return action ? action() : 0;
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const DataError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return 3;
  }
}
