#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jitlab/core/time.hpp"

namespace jitlab::szz {

struct IssueRecord {
  std::string issue_id;
  std::optional<Timestamp> reported_time;
  std::string title;
  std::string description;
  std::string reporter;
};

// Reads issues from CSV (header: issue_id, reported_time, title,
// description, reporter) or newline-JSON, chosen by extension (.csv vs
// anything else). Duplicate ids are an error.
std::vector<IssueRecord> read_issues(const std::filesystem::path& path);
void write_issues_jsonl(const std::filesystem::path& path, const std::vector<IssueRecord>& issues);

}  // namespace jitlab::szz
