#include "jitlab/szz/issue.hpp"

#include <unordered_set>

#include "jitlab/core/csv.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/core/jsonl.hpp"

namespace jitlab::szz {
namespace {

std::optional<Timestamp> optional_time(const std::string& text) {
  if (text.find_first_not_of(" \t") == std::string::npos) return std::nullopt;
  return parse_timestamp(text);
}

void check_unique(const std::vector<IssueRecord>& issues) {
  std::unordered_set<std::string> seen;
  for (const auto& issue : issues) {
    if (issue.issue_id.empty()) throw DataError("issue with empty issue_id");
    if (!seen.insert(issue.issue_id).second) throw DataError("duplicate issue_id '" + issue.issue_id + "'");
  }
}

}  // namespace

std::vector<IssueRecord> read_issues(const std::filesystem::path& path) {
  std::vector<IssueRecord> issues;
  if (path.extension() == ".csv") {
    const auto table = csv::Table::read_file(path);
    const auto id = table.require_column("issue_id");
    const auto reported = table.require_column("reported_time");
    const auto title = table.column("title");
    const auto description = table.column("description");
    const auto reporter = table.column("reporter");
    for (const auto& row : table.rows()) {
      IssueRecord issue;
      issue.issue_id = row[id];
      issue.reported_time = optional_time(row[reported]);
      if (title) issue.title = row[*title];
      if (description) issue.description = row[*description];
      if (reporter) issue.reporter = row[*reporter];
      issues.push_back(std::move(issue));
    }
  } else {
    jsonl::for_each(path, [&](const nlohmann::json& j) {
      IssueRecord issue;
      const auto& id = j.at("issue_id");
      issue.issue_id = id.is_string() ? id.get<std::string>() : id.dump();
      if (j.contains("reported_time") && !j.at("reported_time").is_null()) {
        const auto& t = j.at("reported_time");
        issue.reported_time = t.is_number() ? from_epoch(t.get<std::int64_t>()) : parse_timestamp(t.get<std::string>());
      }
      issue.title = j.value("title", "");
      issue.description = j.value("description", "");
      issue.reporter = j.value("reporter", "");
      issues.push_back(std::move(issue));
    });
  }
  check_unique(issues);
  return issues;
}

void write_issues_jsonl(const std::filesystem::path& path, const std::vector<IssueRecord>& issues) {
  jsonl::write(path, issues, [](const IssueRecord& i) {
    nlohmann::json j = {{"issue_id", i.issue_id},
                        {"title", i.title},
                        {"description", i.description},
                        {"reporter", i.reporter}};
    j["reported_time"] = i.reported_time ? nlohmann::json(format_timestamp(*i.reported_time)) : nlohmann::json();
    return j;
  });
}

}  // namespace jitlab::szz
