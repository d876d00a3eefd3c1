#include "jitlab/szz/linkage.hpp"

#include <unordered_map>
#include <unordered_set>

#include "jitlab/core/error.hpp"

namespace jitlab::szz {

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::kCosmetic: return "cosmetic";
    case DropReason::kFutureDated: return "future_dated";
    case DropReason::kSuspiciousFlag: return "suspicious_flag";
  }
  return "cosmetic";
}

DropReason drop_reason_from_string(std::string_view text) {
  if (text == "cosmetic") return DropReason::kCosmetic;
  if (text == "future_dated") return DropReason::kFutureDated;
  if (text == "suspicious_flag") return DropReason::kSuspiciousFlag;
  throw DataError("unknown drop reason '" + std::string(text) + "'");
}

IdPattern::IdPattern(std::string source) : source_(std::move(source)) {
  try {
    regex_ = std::regex(source_, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw UsageError("malformed issue-id pattern '" + source_ + "': " + e.what());
  }
  if (regex_.mark_count() < 1) {
    throw UsageError("issue-id pattern '" + source_ + "' needs a capture group for the id");
  }
}

std::vector<std::string> IdPattern::extract(std::string_view message) const {
  std::vector<std::string> ids;
  const std::string text(message);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), regex_); it != std::sregex_iterator(); ++it) {
    std::string id = (*it)[1].str();
    if (!id.empty() && id.front() == '#') id.erase(0, 1);
    if (!id.empty()) ids.push_back(std::move(id));
  }
  return ids;
}

std::vector<IdPattern> compile_patterns(const std::vector<std::string>& sources) {
  if (sources.empty()) throw UsageError("at least one issue-id pattern is required");
  std::vector<IdPattern> out;
  out.reserve(sources.size());
  for (const auto& s : sources) out.emplace_back(s);
  return out;
}

std::vector<BugLinkage> link_issues(const std::vector<vcs::CommitRecord>& commits,
                                    const std::vector<IssueRecord>& issues,
                                    const std::vector<IdPattern>& patterns) {
  std::unordered_map<std::string, std::size_t> issue_slot;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (!issue_slot.emplace(issues[i].issue_id, i).second) {
      throw DataError("duplicate issue id '" + issues[i].issue_id + "'");
    }
  }

  std::vector<std::vector<std::string>> bfcs(issues.size());
  std::unordered_set<std::string> seen_commits;
  for (const auto& commit : commits) {
    if (!seen_commits.insert(commit.id).second) throw DataError("duplicate commit id '" + commit.id + "'");
    std::unordered_set<std::size_t> hit;
    for (const auto& pattern : patterns) {
      for (const auto& id : pattern.extract(commit.message)) {
        auto it = issue_slot.find(id);
        if (it == issue_slot.end() || !hit.insert(it->second).second) continue;
        bfcs[it->second].push_back(commit.id);
      }
    }
  }

  std::vector<BugLinkage> linkages;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (bfcs[i].empty()) continue;
    BugLinkage l;
    l.issue_id = issues[i].issue_id;
    l.bfc_ids = std::move(bfcs[i]);
    linkages.push_back(std::move(l));
  }
  return linkages;
}

}  // namespace jitlab::szz
