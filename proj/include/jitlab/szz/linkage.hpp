#pragma once

#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "jitlab/szz/issue.hpp"
#include "jitlab/vcs/commit.hpp"

namespace jitlab::szz {

enum class DropReason { kCosmetic, kFutureDated, kSuspiciousFlag };

std::string_view to_string(DropReason reason);
DropReason drop_reason_from_string(std::string_view text);

// One fixed line that blame traced back to a candidate.
struct Evidence {
  std::string bfc_id;
  std::string path;         // path in the BFC's first parent
  int line = 0;             // line number in the BFC's first parent
  std::string origin_path;  // path in the candidate commit
  int origin_line = 0;      // line number in the candidate's post-image
  vcs::LineKind kind = vcs::LineKind::kCode;  // what the candidate did to the line

  bool operator==(const Evidence&) const = default;
};

struct BicCandidate {
  std::string commit_id;
  Timestamp author_time{};
  Timestamp commit_time{};
  std::vector<Evidence> evidence;

  bool operator==(const BicCandidate&) const = default;
};

struct DroppedCandidate {
  BicCandidate candidate;
  std::set<DropReason> reasons;

  bool operator==(const DroppedCandidate&) const = default;
};

struct BugLinkage {
  std::string issue_id;
  std::vector<std::string> bfc_ids;
  std::vector<BicCandidate> bic_candidates;
  // Sorted by commit id so that filters commute.
  std::vector<DroppedCandidate> dropped;
  // BFCs that removed no traceable pre-image line (pure additions, roots).
  std::vector<std::string> untraceable_bfcs;
  // Set when an external annotation flags one of the BFCs.
  bool suspicious = false;

  std::size_t candidate_count() const { return bic_candidates.size() + dropped.size(); }
  bool operator==(const BugLinkage&) const = default;
};

// A compiled issue-id extraction template. The first capture group yields
// the id; a leading '#' is stripped.
class IdPattern {
 public:
  explicit IdPattern(std::string source);

  const std::string& source() const { return source_; }
  std::vector<std::string> extract(std::string_view message) const;

 private:
  std::string source_;
  std::regex regex_;
};

std::vector<IdPattern> compile_patterns(const std::vector<std::string>& sources);

// A commit is a BFC of every known issue whose id its message mentions.
// Linkages come out in issue order; bfc_ids in commit order. Issues without
// a matching commit produce no linkage. Duplicate commit or issue ids are
// rejected.
std::vector<BugLinkage> link_issues(const std::vector<vcs::CommitRecord>& commits,
                                    const std::vector<IssueRecord>& issues,
                                    const std::vector<IdPattern>& patterns);

}  // namespace jitlab::szz
