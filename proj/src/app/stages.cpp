#include "jitlab/app/stages.hpp"

#include <fstream>
#include <set>
#include <spdlog/spdlog.h>

#include "jitlab/core/csv.hpp"
#include "jitlab/core/jsonl.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/core/numfmt.hpp"
#include "jitlab/curation/filters.hpp"
#include "jitlab/curation/label_store.hpp"
#include "jitlab/eval/export.hpp"
#include "jitlab/metrics/metrics_io.hpp"
#include "jitlab/model/model_io.hpp"
#include "jitlab/stats/density.hpp"
#include "jitlab/stats/descriptive.hpp"
#include "jitlab/stats/rank_tests.hpp"
#include "jitlab/szz/linkage_io.hpp"
#include "jitlab/vcs/commit_io.hpp"

namespace jitlab::app {

namespace fs = std::filesystem;

namespace paths {
std::string ledger(int m) { return "filter/ledger_m" + std::to_string(m) + ".csv"; }
std::string dataset(int m) { return "filter/dataset_m" + std::to_string(m) + ".csv"; }
std::string periods(int m) { return "filter/periods_m" + std::to_string(m) + ".csv"; }
std::string model_dir(int m, eval::Scheme s) {
  return "models/m" + std::to_string(m) + "_" + std::string(eval::to_string(s));
}
std::string eval_dir(int m, eval::Scheme s) { return "eval/m" + std::to_string(m) + "_" + std::string(eval::to_string(s)); }
std::string importance(int m, eval::Scheme s) {
  return "importance/m" + std::to_string(m) + "_" + std::string(eval::to_string(s)) + ".csv";
}
std::string fis_diff(int m, eval::Scheme s) {
  return "stability/m" + std::to_string(m) + "_" + std::string(eval::to_string(s)) + "_fis_diff.csv";
}
std::string adjacent_auc(int m, eval::Scheme s) {
  return "stability/m" + std::to_string(m) + "_" + std::string(eval::to_string(s)) + "_adjacent_auc.csv";
}
}  // namespace paths

namespace {

fs::path require(const fs::path& out, const std::string& rel) {
  const auto p = out / rel;
  if (!fs::exists(p)) throw UsageError("missing " + p.string() + "; run the stage that produces it first");
  return p;
}

std::string model_file(int period) { return "period_" + std::to_string(period) + ".json"; }

// Models of one (months, scheme) cell, by train period, read back from disk.
eval::SchemeModels load_models(const fs::path& out, int months, eval::Scheme scheme, int period_count) {
  eval::SchemeModels models;
  models.scheme = scheme;
  models.period_count = period_count;
  for (int n = 1; n < period_count; ++n) {
    const auto p = out / paths::model_dir(months, scheme) / model_file(n);
    if (fs::exists(p)) models.models.emplace(n, model::read_model(p));
  }
  return models;
}

int period_count_of(const std::vector<metrics::ChangeMetrics>& rows) {
  int count = 0;
  for (const auto& r : rows) {
    if (r.period) count = std::max(count, *r.period);
  }
  return count;
}

}  // namespace

model::ModelOptions model_options(const PipelineConfig& c) {
  model::ModelOptions o;
  o.rho_threshold = c.rho_threshold;
  o.r2_threshold = c.r2_threshold;
  o.redundancy_transform = c.redundancy_transform;
  o.df = c.spline_df;
  return o;
}

std::map<std::string, curation::Verdict> load_verdicts(const std::optional<fs::path>& labels,
                                                       const std::vector<szz::IssueRecord>& issues) {
  if (!labels) return {};
  std::set<std::string> ids;
  for (const auto& i : issues) ids.insert(i.issue_id);
  bool events = false;
  jsonl::for_each(*labels, [&](const nlohmann::json& j) { events = events || j.contains("event"); });
  if (events) {
    curation::LabelStore store(ids, *labels);
    return store.consensus();
  }
  curation::LabelStore store(ids);
  store.import_labels(curation::read_labels(*labels));
  return store.consensus();
}

std::vector<std::string> mine_stage(const PipelineConfig& c, const fs::path& out) {
  vcs::MiningOptions options;
  options.merge_mode = c.merge_mode;
  options.rename_similarity = c.rename_similarity;
  options.jobs = c.jobs;
  const auto repo = vcs::Repository::open(c.repo, options);
  vcs::write_commits(out / paths::kCommits, repo.mine(c.branch));
  return {paths::kCommits};
}

std::vector<std::string> link_stage(const PipelineConfig& c, const fs::path& out) {
  const auto commits = vcs::read_commits(require(out, paths::kCommits));
  const auto issues = szz::read_issues(c.issues);
  const auto linkages = szz::link_issues(commits, issues, szz::compile_patterns(c.patterns));
  szz::write_linkages(out / paths::kRawLinkages, linkages);
  return {paths::kRawLinkages};
}

std::vector<std::string> szz_stage(const PipelineConfig& c, const fs::path& out) {
  const auto commits = vcs::read_commits(require(out, paths::kCommits));
  auto linkages = szz::read_linkages(require(out, paths::kRawLinkages));
  const auto issues = szz::read_issues(c.issues);
  std::set<std::string> suspicious;
  if (c.suspicious) suspicious = szz::read_suspicious_annotations(*c.suspicious);
  vcs::MiningOptions mining;
  mining.merge_mode = c.merge_mode;
  mining.rename_similarity = c.rename_similarity;
  const auto repo = vcs::Repository::open(c.repo, mining);
  szz::SzzOptions options;
  options.cosmetic_filter = c.cosmetic_filter;
  options.date_filter = c.date_filter;
  options.date_basis = c.date_basis;
  options.jobs = c.jobs;
  const vcs::CommitIndex index(commits);
  szz::write_linkages(out / paths::kLinkages,
                      szz::run_szz(std::move(linkages), index, repo, issues, suspicious, options));
  return {paths::kLinkages};
}

std::vector<std::string> metrics_stage(const PipelineConfig& c, const fs::path& out) {
  const auto commits = vcs::read_commits(require(out, paths::kCommits));
  const auto linkages = szz::read_linkages(require(out, paths::kLinkages));
  metrics::ReviewMap reviews;
  if (c.reviews) reviews = metrics::index_reviews(metrics::read_reviews(*c.reviews));
  std::set<std::string> bics;
  for (const auto& l : linkages) {
    if (l.suspicious) continue;
    for (const auto& b : l.bic_candidates) bics.insert(b.commit_id);
  }
  metrics::MetricOptions options;
  options.days_per_year = c.days_per_year;
  options.age = c.age_aggregation;
  options.reviewers = c.reviewer_aggregation;
  metrics::write_metrics_csv(out / paths::kMetrics, metrics::compute_change_metrics(commits, reviews, bics, options));
  return {paths::kMetrics};
}

std::vector<std::string> filter_stage(const PipelineConfig& c, const fs::path& out) {
  const auto rows = metrics::read_metrics_csv(require(out, paths::kMetrics));
  const auto linkages = szz::read_linkages(require(out, paths::kLinkages));
  const auto verdicts = load_verdicts(c.labels, szz::read_issues(c.issues));
  std::vector<std::string> written;
  for (int m : c.months) {
    curation::FilterOptions options;
    options.drop_mislabeled = c.drop_mislabeled;
    options.churn_threshold = c.churn_threshold;
    options.files_threshold = c.files_threshold;
    options.months = m;
    const auto filtered = curation::apply_filters(rows, linkages, verdicts, options);
    curation::write_filter_ledger(out / paths::ledger(m), filtered.stages);
    metrics::write_metrics_csv(out / paths::dataset(m), filtered.rows);
    written.push_back(paths::ledger(m));
    written.push_back(paths::dataset(m));
  }
  return written;
}

std::vector<std::string> stratify_stage(const PipelineConfig& c, const fs::path& out) {
  std::vector<std::string> written;
  for (int m : c.months) {
    const auto rows = metrics::read_metrics_csv(require(out, paths::dataset(m)));
    const auto partition = curation::stratify_periods(rows, m);
    std::map<int, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& r : rows) {
      if (!r.period) continue;
      auto& [changes, bics] = counts[*r.period];
      ++changes;
      bics += r.is_bic ? 1 : 0;
    }
    eval::write_file(out / paths::periods(m), [&](std::ostream& o) {
      csv::write_row(o, {"period", "window_start", "window_end", "changes", "bics"});
      for (int p = 1; p <= partition.count; ++p) {
        const auto [changes, bics] = counts[p];
        csv::write_row(o, {std::to_string(p), format_timestamp(partition.window_start(p)),
                           format_timestamp(partition.window_end(p)), std::to_string(changes), std::to_string(bics)});
      }
    });
    written.push_back(paths::periods(m));
  }
  return written;
}

std::vector<std::string> fit_stage(const PipelineConfig& c, const fs::path& out) {
  std::vector<std::string> written;
  for (int m : c.months) {
    const auto rows = metrics::read_metrics_csv(require(out, paths::dataset(m)));
    const int periods = period_count_of(rows);
    for (auto scheme : c.schemes) {
      const auto dir = paths::model_dir(m, scheme);
      fs::remove_all(out / dir);
      const auto models = eval::fit_scheme(rows, periods, scheme, model_options(c), c.jobs);
      for (const auto& [n, model] : models.models) {
        const auto rel = dir + "/" + model_file(n);
        model::write_model(out / rel, model);
        written.push_back(rel);
      }
    }
  }
  return written;
}

std::vector<std::string> evaluate_stage(const PipelineConfig& c, const fs::path& out) {
  std::vector<std::string> written;
  for (int m : c.months) {
    const auto rows = metrics::read_metrics_csv(require(out, paths::dataset(m)));
    const int periods = period_count_of(rows);
    for (auto scheme : c.schemes) {
      const auto result = eval::evaluate_scheme(rows, load_models(out, m, scheme, periods));
      const auto dir = paths::eval_dir(m, scheme);
      eval::export_heatmaps(out / dir, result);
      eval::write_file(out / dir / "summary.json",
                       [&](std::ostream& o) { o << eval::summary_json(result).dump(2) << '\n'; });
      for (const char* f : {"auc.csv", "brier.csv", "delta_auc.csv", "delta_brier.csv", "summary.json"}) {
        written.push_back(dir + "/" + f);
      }
    }
  }
  return written;
}

namespace {

std::vector<eval::FamilyImportance> importance_series(const PipelineConfig& c, const fs::path& out, int m,
                                                      eval::Scheme scheme) {
  const auto rows = metrics::read_metrics_csv(require(out, paths::dataset(m)));
  const auto models = load_models(out, m, scheme, period_count_of(rows));
  std::vector<eval::FamilyImportance> series;
  for (const auto& [n, model] : models.models) series.push_back(eval::family_importance(model, n, c.normalization));
  return series;
}

}  // namespace

std::vector<std::string> importance_stage(const PipelineConfig& c, const fs::path& out) {
  std::vector<std::string> written;
  for (int m : c.months) {
    for (auto scheme : c.schemes) {
      const auto series = importance_series(c, out, m, scheme);
      eval::write_file(out / paths::importance(m, scheme),
                       [&](std::ostream& o) { eval::write_importance_csv(o, scheme, series); });
      written.push_back(paths::importance(m, scheme));
    }
  }
  return written;
}

std::vector<std::string> stability_stage(const PipelineConfig& c, const fs::path& out) {
  std::vector<std::string> written;
  for (int m : c.months) {
    const auto rows = metrics::read_metrics_csv(require(out, paths::dataset(m)));
    for (auto scheme : c.schemes) {
      const auto series = importance_series(c, out, m, scheme);
      eval::write_file(out / paths::fis_diff(m, scheme),
                       [&](std::ostream& o) { eval::write_fis_diff_csv(o, scheme, series); });
      const auto result = eval::evaluate_scheme(rows, load_models(out, m, scheme, period_count_of(rows)));
      eval::write_file(out / paths::adjacent_auc(m, scheme),
                       [&](std::ostream& o) { eval::write_adjacent_stability_csv(o, result); });
      written.push_back(paths::fis_diff(m, scheme));
      written.push_back(paths::adjacent_auc(m, scheme));
    }
  }
  return written;
}

std::vector<std::string> stats_stage(const PipelineConfig& c, const fs::path& out) {
  const auto rows = metrics::read_metrics_csv(require(out, paths::kMetrics));
  const auto linkages = szz::read_linkages(require(out, paths::kLinkages));
  const auto verdicts = load_verdicts(c.labels, szz::read_issues(c.issues));

  // A BIC belongs to the group of every issue that links it.
  std::map<std::string, std::set<curation::Verdict>> groups_of;
  for (const auto& l : linkages) {
    if (l.suspicious) continue;
    auto it = verdicts.find(l.issue_id);
    const auto v = it == verdicts.end() ? curation::Verdict::kIntrinsic : it->second;
    for (const auto& b : l.bic_candidates) groups_of[b.commit_id].insert(v);
  }
  const std::vector<curation::Verdict> groups = {curation::Verdict::kIntrinsic, curation::Verdict::kExtrinsic,
                                                 curation::Verdict::kMislabeled};
  std::map<std::string, std::map<curation::Verdict, std::vector<double>>> values;
  for (const auto& r : rows) {
    auto it = groups_of.find(r.change_id);
    if (it == groups_of.end()) continue;
    for (auto name : metrics::kPropertyNames) {
      for (auto v : it->second) values[std::string(name)][v].push_back(metrics::property_value(r, name));
    }
  }

  eval::write_file(out / "stats/kruskal_wallis.csv", [&](std::ostream& o) {
    csv::write_row(o, {"property", "family", "h", "df", "p_value", "n_intrinsic", "n_extrinsic", "n_mislabeled"});
    for (auto name : metrics::kPropertyNames) {
      auto& g = values[std::string(name)];
      csv::Row row{std::string(name), std::string(model::to_string(model::family_of(name)))};
      std::vector<std::vector<double>> samples;
      for (auto v : groups) samples.push_back(g[v]);
      try {
        const auto kw = stats::kruskal_wallis(samples);
        row.insert(row.end(), {format_double(kw.h), std::to_string(kw.df), format_double(kw.p)});
      } catch (const DataError&) {
        row.insert(row.end(), {"NA", "NA", "NA"});
      }
      for (const auto& s : samples) row.push_back(std::to_string(s.size()));
      csv::write_row(o, row);
    }
  });

  eval::write_file(out / "stats/rank_sum.csv", [&](std::ostream& o) {
    csv::write_row(o, {"property", "group_a", "group_b", "u", "p_value", "exact"});
    for (auto name : metrics::kPropertyNames) {
      auto& g = values[std::string(name)];
      for (std::size_t i = 0; i < groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
          const auto& a = g[groups[i]];
          const auto& b = g[groups[j]];
          csv::Row row{std::string(name), std::string(to_string(groups[i])), std::string(to_string(groups[j]))};
          if (a.empty() || b.empty()) {
            row.insert(row.end(), {"NA", "NA", "NA"});
          } else {
            const auto w = stats::wilcoxon_rank_sum(a, b, c.wilcoxon_exact_max);
            row.insert(row.end(), {format_double(w.u), format_double(w.p), w.exact ? "1" : "0"});
          }
          csv::write_row(o, row);
        }
      }
    }
  });

  eval::write_file(out / "stats/skewness.csv", [&](std::ostream& o) {
    csv::write_row(o, {"group", "property", "n", "skewness"});
    for (auto v : groups) {
      for (auto name : metrics::kPropertyNames) {
        const auto& s = values[std::string(name)][v];
        std::string sk = "NA";
        try {
          sk = format_double(stats::skewness(s));
        } catch (const DataError&) {
        }
        csv::write_row(o, {std::string(to_string(v)), std::string(name), std::to_string(s.size()), sk});
      }
    }
  });

  eval::write_file(out / "stats/density.csv", [&](std::ostream& o) {
    csv::write_row(o, {"group", "property", "grid_point", "density", "bandwidth", "degenerate"});
    for (auto v : groups) {
      for (auto name : metrics::kPropertyNames) {
        const auto& s = values[std::string(name)][v];
        if (s.size() < 2) continue;
        const double h = stats::silverman_bandwidth(s);
        const auto grid = stats::density_grid(s, h > 0.0 ? h : 1.0, 128);
        const auto kde = stats::kernel_density(s, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          csv::write_row(o, {std::string(to_string(v)), std::string(name), format_double(grid[i]),
                             format_double(kde.density[i]), format_double(kde.bandwidth), kde.degenerate ? "1" : "0"});
        }
      }
    }
  });
  return {"stats/kruskal_wallis.csv", "stats/rank_sum.csv", "stats/skewness.csv", "stats/density.csv"};
}

}  // namespace jitlab::app
