#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jitlab/eval/importance.hpp"
#include "jitlab/eval/schemes.hpp"
#include "jitlab/metrics/change_metrics.hpp"
#include "jitlab/model/pruning.hpp"
#include "jitlab/szz/szz.hpp"
#include "jitlab/vcs/repository.hpp"

namespace jitlab::app {

struct PipelineConfig {
  std::filesystem::path repo;
  std::string branch = "HEAD";
  std::filesystem::path issues;
  std::optional<std::filesystem::path> reviews;
  std::optional<std::filesystem::path> labels;      // exported label records (JSONL)
  std::optional<std::filesystem::path> suspicious;  // annotation file
  std::vector<std::string> patterns;
  std::filesystem::path output = "jitlab-out";

  // mining
  vcs::MergeDiffMode merge_mode = vcs::MergeDiffMode::kFirstParent;
  int rename_similarity = 50;
  // szz
  bool cosmetic_filter = true;
  bool date_filter = true;
  szz::DateBasis date_basis = szz::DateBasis::kAuthorTime;
  // metrics
  double days_per_year = 365.25;
  metrics::AgeAggregation age_aggregation = metrics::AgeAggregation::kMean;
  metrics::ReviewerAggregation reviewer_aggregation = metrics::ReviewerAggregation::kMean;
  // curation
  long long churn_threshold = 10000;
  long long files_threshold = 100;
  bool drop_mislabeled = false;
  std::vector<int> months = {3, 6};
  // model
  double rho_threshold = 0.7;
  double r2_threshold = 0.9;
  model::RedundancyTransform redundancy_transform = model::RedundancyTransform::kRank;
  int spline_df = 3;
  std::vector<eval::Scheme> schemes = {eval::Scheme::kShort, eval::Scheme::kLong};
  eval::Normalization normalization = eval::Normalization::kFamilySum;
  // stats
  std::size_t wilcoxon_exact_max = 8;

  unsigned jobs = 1;
};

// Applies one `key = value` setting. Repeated `pattern` keys accumulate.
// Throws UsageError for unknown keys or malformed values.
void apply_setting(PipelineConfig& config, const std::string& key, const std::string& value);

// Key-value file: one `key = value` per line, '#' starts a comment.
// Relative paths are resolved against the file's directory.
PipelineConfig load_config(const std::filesystem::path& path);

// Throws UsageError when a threshold is out of range or a period length is
// not 3 or 6. An empty pattern list is only rejected by the link stage.
void validate(const PipelineConfig& config);

// Canonical `key = value` lines (sorted keys, paths as given). Stable across
// runs, so it can be hashed.
std::map<std::string, std::string> snapshot(const PipelineConfig& config);

}  // namespace jitlab::app
