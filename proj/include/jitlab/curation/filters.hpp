#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "jitlab/curation/periods.hpp"
#include "jitlab/curation/rule_catalog.hpp"
#include "jitlab/metrics/change_metrics.hpp"
#include "jitlab/szz/linkage.hpp"

namespace jitlab::curation {

struct FilterOptions {
  bool drop_mislabeled = false;
  long long churn_threshold = 10000;  // drop when la + ld >= threshold
  long long files_threshold = 100;    // drop when nf >= threshold
  int months = 3;
};

struct StageCount {
  std::string id;    // F0 .. F5
  std::string name;  // ledger label
  std::size_t issues = 0;
  std::size_t bics = 0;
};

struct FilteredDataset {
  std::vector<StageCount> stages;
  // Surviving rows in input order, is_bic relabeled, period assigned.
  std::vector<metrics::ChangeMetrics> rows;
  int months = 3;
  int period_count = 0;
  // Linked issues that had no verdict and were treated as intrinsic.
  std::vector<std::string> unlabeled_issues;
};

// F0 labels rows from the union of retained candidates over all linkages
// (linkages whose BFC was flagged suspicious contribute none). F1 keeps the
// BIC links of intrinsic issues, and of mislabeled ones unless
// `drop_mislabeled`; a commit stays a BIC while any kept issue links it.
// F2-F4 drop rows by churn, file count and zero added lines; F5 drops rows
// outside complete periods. Issue counts are frozen after F1.
FilteredDataset apply_filters(std::vector<metrics::ChangeMetrics> rows, const std::vector<szz::BugLinkage>& linkages,
                              const std::map<std::string, Verdict>& verdicts, const FilterOptions& options = {});

// Columns: #, Filter, Issues, BICs
void write_filter_ledger(std::ostream& out, const std::vector<StageCount>& stages);
void write_filter_ledger(const std::filesystem::path& path, const std::vector<StageCount>& stages);

}  // namespace jitlab::curation
