#include "jitlab/curation/filters.hpp"

#include <fstream>
#include <set>
#include <spdlog/spdlog.h>

#include "jitlab/core/csv.hpp"
#include "jitlab/core/error.hpp"

namespace jitlab::curation {
namespace {

std::size_t count_bics(const std::vector<metrics::ChangeMetrics>& rows) {
  std::set<std::string> ids;
  for (const auto& r : rows) {
    if (r.is_bic) ids.insert(r.change_id);
  }
  return ids.size();
}

}  // namespace

FilteredDataset apply_filters(std::vector<metrics::ChangeMetrics> rows, const std::vector<szz::BugLinkage>& linkages,
                              const std::map<std::string, Verdict>& verdicts, const FilterOptions& options) {
  FilteredDataset out;
  out.months = options.months;

  std::set<std::string> all_issues, kept_issues;
  std::set<std::string> all_bics, kept_bics;
  for (const auto& l : linkages) {
    all_issues.insert(l.issue_id);
    Verdict v = Verdict::kIntrinsic;
    if (auto it = verdicts.find(l.issue_id); it != verdicts.end()) {
      v = it->second;
    } else {
      out.unlabeled_issues.push_back(l.issue_id);
    }
    const bool keep = v == Verdict::kIntrinsic || (v == Verdict::kMislabeled && !options.drop_mislabeled);
    if (keep) kept_issues.insert(l.issue_id);
    if (l.suspicious) continue;
    for (const auto& c : l.bic_candidates) {
      all_bics.insert(c.commit_id);
      if (keep) kept_bics.insert(c.commit_id);
    }
  }
  if (!out.unlabeled_issues.empty()) {
    spdlog::warn("{} linked issue(s) have no verdict; treating them as intrinsic", out.unlabeled_issues.size());
  }

  for (auto& r : rows) r.is_bic = all_bics.count(r.change_id) > 0;
  out.stages.push_back({"F0", "Issue-VCS dataset", all_issues.size(), count_bics(rows)});

  for (auto& r : rows) r.is_bic = kept_bics.count(r.change_id) > 0;
  const std::size_t issues = kept_issues.size();
  out.stages.push_back({"F1", options.drop_mislabeled ? "Extrinsic and Mislabeled Bugs" : "Extrinsic Bugs", issues,
                        count_bics(rows)});

  std::erase_if(rows, [&](const auto& r) { return r.la + r.ld >= options.churn_threshold; });
  out.stages.push_back({"F2", "Too much Churn", issues, count_bics(rows)});

  std::erase_if(rows, [&](const auto& r) { return r.nf >= options.files_threshold; });
  out.stages.push_back({"F3", "Too many Files", issues, count_bics(rows)});

  std::erase_if(rows, [](const auto& r) { return r.la == 0; });
  out.stages.push_back({"F4", "No lines added", issues, count_bics(rows)});

  const auto partition = stratify_periods(rows, options.months);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].period = partition.assignment[i];
  std::erase_if(rows, [](const auto& r) { return !r.period.has_value(); });
  out.period_count = partition.count;
  out.stages.push_back({"F5", "Period", issues, count_bics(rows)});

  out.rows = std::move(rows);
  return out;
}

void write_filter_ledger(std::ostream& out, const std::vector<StageCount>& stages) {
  csv::write_row(out, {"#", "Filter", "Issues", "BICs"});
  for (const auto& s : stages) {
    csv::write_row(out, {s.id, s.name, std::to_string(s.issues), std::to_string(s.bics)});
  }
}

void write_filter_ledger(const std::filesystem::path& path, const std::vector<StageCount>& stages) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  write_filter_ledger(out, stages);
}

}  // namespace jitlab::curation
