#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "jitlab/core/time.hpp"

namespace jitlab::metrics {

struct ReviewRecord {
  std::string change_id;
  Timestamp created_time{};
  Timestamp approved_time{};
  int revisions = 1;
  std::set<std::string> voters;
  int human_nonowner_comments = 0;
  std::set<std::string> reviewers;
};

// Throws DataError when approval precedes creation or revisions < 1.
void validate(const ReviewRecord& record);

// CSV (change_id, created_time, approved_time, revisions, voters,
// human_nonowner_comments, reviewers; identity lists separated by ';') or
// newline-JSON with array-valued voters/reviewers.
std::vector<ReviewRecord> read_reviews(const std::filesystem::path& path);

using ReviewMap = std::unordered_map<std::string, ReviewRecord>;
ReviewMap index_reviews(std::vector<ReviewRecord> reviews);

// Comparable identity: the lower-cased e-mail inside "Name <mail>" when
// present, otherwise the lower-cased trimmed string.
std::string identity_key(std::string_view identity);

}  // namespace jitlab::metrics
