#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "jitlab/app/config.hpp"
#include "jitlab/curation/rule_catalog.hpp"
#include "jitlab/szz/issue.hpp"
#include "jitlab/szz/linkage.hpp"

namespace jitlab::app {

// Artifact locations relative to the output directory.
namespace paths {
inline const std::string kCommits = "commits.jsonl";
inline const std::string kRawLinkages = "linkages_raw.jsonl";
inline const std::string kLinkages = "linkages.jsonl";
inline const std::string kMetrics = "metrics.csv";
std::string ledger(int months);
std::string dataset(int months);
std::string periods(int months);
std::string model_dir(int months, eval::Scheme scheme);
std::string eval_dir(int months, eval::Scheme scheme);
std::string importance(int months, eval::Scheme scheme);
std::string fis_diff(int months, eval::Scheme scheme);
std::string adjacent_auc(int months, eval::Scheme scheme);
}  // namespace paths

// Every stage reads its inputs from, and writes its outputs under, `out`.
// Each returns the relative paths it wrote, in a stable order.
std::vector<std::string> mine_stage(const PipelineConfig& config, const std::filesystem::path& out);
std::vector<std::string> link_stage(const PipelineConfig& config, const std::filesystem::path& out);
std::vector<std::string> szz_stage(const PipelineConfig& config, const std::filesystem::path& out);
std::vector<std::string> metrics_stage(const PipelineConfig& config, const std::filesystem::path& out);
std::vector<std::string> filter_stage(const PipelineConfig& config, const std::filesystem::path& out);
std::vector<std::string> stratify_stage(const PipelineConfig& config, const std::filesystem::path& out);
std::vector<std::string> fit_stage(const PipelineConfig& config, const std::filesystem::path& out);
std::vector<std::string> evaluate_stage(const PipelineConfig& config, const std::filesystem::path& out);
std::vector<std::string> importance_stage(const PipelineConfig& config, const std::filesystem::path& out);
std::vector<std::string> stability_stage(const PipelineConfig& config, const std::filesystem::path& out);
std::vector<std::string> stats_stage(const PipelineConfig& config, const std::filesystem::path& out);

// Verdicts from either a label-store event log or exported label records.
// Unresolved disagreements are an error. No file means no verdicts.
std::map<std::string, curation::Verdict> load_verdicts(const std::optional<std::filesystem::path>& labels,
                                                       const std::vector<szz::IssueRecord>& issues);

model::ModelOptions model_options(const PipelineConfig& config);

}  // namespace jitlab::app
