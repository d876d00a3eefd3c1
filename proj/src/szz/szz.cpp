#include "jitlab/szz/szz.hpp"

#include <algorithm>
#include <unordered_map>

#include "jitlab/core/error.hpp"
#include "jitlab/core/parallel.hpp"

namespace jitlab::szz {
namespace {

vcs::LineKind introduced_kind(const vcs::CommitIndex& commits, const vcs::LineOrigin& origin) {
  const auto* commit = commits.find(origin.commit_id);
  if (!commit) return vcs::LineKind::kCode;
  for (const auto& delta : commit->files) {
    if (delta.path != origin.path) continue;
    if (auto it = delta.line_kinds.find(origin.line); it != delta.line_kinds.end()) return it->second;
  }
  return vcs::LineKind::kCode;
}

template <typename Predicate>
BugLinkage apply_drop(BugLinkage linkage, DropReason reason, Predicate&& should_drop) {
  std::vector<BicCandidate> kept;
  for (auto& candidate : linkage.bic_candidates) {
    if (should_drop(candidate)) {
      linkage.dropped.push_back({std::move(candidate), {reason}});
    } else {
      kept.push_back(std::move(candidate));
    }
  }
  linkage.bic_candidates = std::move(kept);
  for (auto& d : linkage.dropped) {
    if (should_drop(d.candidate)) d.reasons.insert(reason);
  }
  std::sort(linkage.dropped.begin(), linkage.dropped.end(),
            [](const DroppedCandidate& a, const DroppedCandidate& b) {
              return a.candidate.commit_id < b.candidate.commit_id;
            });
  return linkage;
}

}  // namespace

BugLinkage trace_bic_candidates(BugLinkage linkage, const vcs::CommitIndex& commits,
                                const vcs::LineOriginSource& blame) {
  if (linkage.bfc_ids.empty()) throw DataError("issue " + linkage.issue_id + " has no bug-fixing change");
  linkage.bic_candidates.clear();
  linkage.dropped.clear();
  linkage.untraceable_bfcs.clear();

  std::unordered_map<std::string, std::size_t> slot;
  for (const auto& bfc_id : linkage.bfc_ids) {
    const auto* bfc = commits.find(bfc_id);
    if (!bfc) throw DataError("bug-fixing change " + bfc_id + " of issue " + linkage.issue_id + " was not mined");
    bool traced = false;
    if (!bfc->is_root()) {
      const std::string& parent = bfc->parents.front();
      for (const auto& delta : bfc->files) {
        if (delta.binary || delta.status == vcs::ChangeStatus::kAdded || delta.deleted_line_numbers.empty()) {
          continue;
        }
        const auto origins = blame.blame_lines(parent, delta.old_path, delta.deleted_line_numbers);
        for (const auto& [line, origin] : origins) {
          traced = true;
          auto [it, inserted] = slot.emplace(origin.commit_id, linkage.bic_candidates.size());
          if (inserted) {
            const auto* origin_commit = commits.find(origin.commit_id);
            if (!origin_commit) {
              throw DataError("blame reached commit " + origin.commit_id + " which is not in the mined history");
            }
            BicCandidate c;
            c.commit_id = origin.commit_id;
            c.author_time = origin_commit->author_time;
            c.commit_time = origin_commit->commit_time;
            linkage.bic_candidates.push_back(std::move(c));
          }
          linkage.bic_candidates[it->second].evidence.push_back(
              {bfc_id, delta.old_path, line, origin.path, origin.line, introduced_kind(commits, origin)});
        }
      }
    }
    if (!traced) linkage.untraceable_bfcs.push_back(bfc_id);
  }
  return linkage;
}

BugLinkage filter_cosmetic(BugLinkage linkage) {
  return apply_drop(std::move(linkage), DropReason::kCosmetic, [](const BicCandidate& c) {
    return std::all_of(c.evidence.begin(), c.evidence.end(),
                       [](const Evidence& e) { return e.kind != vcs::LineKind::kCode; });
  });
}

BugLinkage filter_future(BugLinkage linkage, const IssueRecord& issue, DateBasis basis) {
  if (issue.issue_id != linkage.issue_id) {
    throw DataError("filter_future: issue " + issue.issue_id + " does not match linkage " + linkage.issue_id);
  }
  if (!issue.reported_time) throw DataError("issue " + issue.issue_id + " has no reported_time");
  const Timestamp reported = *issue.reported_time;
  return apply_drop(std::move(linkage), DropReason::kFutureDated, [&](const BicCandidate& c) {
    const Timestamp t = basis == DateBasis::kAuthorTime ? c.author_time : c.commit_time;
    return t > reported;
  });
}

BugLinkage filter_suspicious(BugLinkage linkage, const std::set<std::string>& flagged) {
  for (const auto& bfc : linkage.bfc_ids) {
    if (flagged.count(bfc)) linkage.suspicious = true;
  }
  return apply_drop(std::move(linkage), DropReason::kSuspiciousFlag,
                    [&](const BicCandidate& c) { return flagged.count(c.commit_id) > 0; });
}

std::vector<BugLinkage> run_szz(std::vector<BugLinkage> linkages, const vcs::CommitIndex& commits,
                                const vcs::LineOriginSource& blame, const std::vector<IssueRecord>& issues,
                                const std::set<std::string>& suspicious, const SzzOptions& options) {
  std::unordered_map<std::string, const IssueRecord*> by_id;
  for (const auto& issue : issues) by_id.emplace(issue.issue_id, &issue);

  auto process = [&](BugLinkage& l) {
    l = trace_bic_candidates(std::move(l), commits, blame);
    if (options.cosmetic_filter) l = filter_cosmetic(std::move(l));
    if (options.date_filter) {
      auto it = by_id.find(l.issue_id);
      if (it == by_id.end()) throw DataError("linkage references unknown issue " + l.issue_id);
      l = filter_future(std::move(l), *it->second, options.date_basis);
    }
    if (!suspicious.empty()) l = filter_suspicious(std::move(l), suspicious);
  };

  parallel_for(linkages.size(), options.jobs, [&](std::size_t i) { process(linkages[i]); });
  return linkages;
}

}  // namespace jitlab::szz
