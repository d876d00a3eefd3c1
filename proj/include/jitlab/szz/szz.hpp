#pragma once

#include <set>
#include <string>
#include <vector>

#include "jitlab/szz/linkage.hpp"
#include "jitlab/vcs/repository.hpp"

namespace jitlab::szz {

enum class DateBasis { kAuthorTime, kCommitTime };

// Blames every pre-image line each BFC deleted or modified, at the BFC's
// first parent. The commits those lines come from become candidates, with
// one evidence entry per line. `commits` must hold the BFCs and every
// commit blame can reach, deltas included.
BugLinkage trace_bic_candidates(BugLinkage linkage, const vcs::CommitIndex& commits,
                                const vcs::LineOriginSource& blame);

// Drops candidates whose every evidence line was a comment or whitespace
// change in the candidate.
BugLinkage filter_cosmetic(BugLinkage linkage);

// Drops candidates dated strictly after the issue was reported.
BugLinkage filter_future(BugLinkage linkage, const IssueRecord& issue,
                         DateBasis basis = DateBasis::kAuthorTime);

// Drops candidates named in an external suspicious-change annotation and
// raises `suspicious` when one of the BFCs is named.
BugLinkage filter_suspicious(BugLinkage linkage, const std::set<std::string>& flagged);

struct SzzOptions {
  bool cosmetic_filter = true;
  bool date_filter = true;
  DateBasis date_basis = DateBasis::kAuthorTime;
  unsigned jobs = 1;
};

// trace + filters over a whole corpus. Output order follows the input.
std::vector<BugLinkage> run_szz(std::vector<BugLinkage> linkages, const vcs::CommitIndex& commits,
                                const vcs::LineOriginSource& blame, const std::vector<IssueRecord>& issues,
                                const std::set<std::string>& suspicious, const SzzOptions& options);

}  // namespace jitlab::szz
