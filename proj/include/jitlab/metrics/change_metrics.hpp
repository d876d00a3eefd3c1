#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jitlab/core/time.hpp"
#include "jitlab/metrics/history_index.hpp"
#include "jitlab/metrics/review.hpp"
#include "jitlab/vcs/commit.hpp"

namespace jitlab::metrics {

// The change properties of one commit plus the outcome label. Field names
// are the conventional JIT acronyms.
struct ChangeMetrics {
  std::string change_id;
  std::string author;
  Timestamp time{};

  // Size
  long long la = 0;
  long long ld = 0;
  // Diffusion
  long long ns = 0;
  long long nd = 0;
  long long nf = 0;
  double ent = 0.0;
  // History
  long long nuc = 0;
  long long ndev = 0;
  double age = 0.0;  // days
  // Author experience
  double aexp = 0.0;
  double arexp = 0.0;
  double asexp = 0.0;
  double asawr = 0.0;
  // Reviewer experience (aggregated over the change's reviewers)
  double rexp = 0.0;
  double rrexp = 0.0;
  double rsexp = 0.0;
  double rsawr = 0.0;
  // Review
  long long nrev = 0;
  long long app = 0;
  long long hcmt = 0;
  double rtime = 0.0;  // days

  bool missing_review = false;
  bool is_bic = false;
  std::optional<int> period;

  bool operator==(const ChangeMetrics&) const = default;
};

struct SizeMetrics {
  long long la = 0;
  long long ld = 0;
};

struct DiffusionMetrics {
  long long ns = 0;
  long long nd = 0;
  long long nf = 0;
  double ent = 0.0;
};

struct HistoryMetrics {
  long long nuc = 0;
  long long ndev = 0;
  double age = 0.0;
};

struct ExperienceMetrics {
  double exp = 0.0;
  double rexp = 0.0;
  double sexp = 0.0;
  double awr = 0.0;
};

struct ReviewMetrics {
  long long nrev = 0;
  long long app = 0;
  long long hcmt = 0;
  double rtime = 0.0;
};

enum class AgeAggregation { kMean, kMax };
enum class ReviewerAggregation { kMean, kSum };

struct MetricOptions {
  double days_per_year = 365.25;  // recency weight 1 / (age_years + 1)
  AgeAggregation age = AgeAggregation::kMean;
  ReviewerAggregation reviewers = ReviewerAggregation::kMean;
};

SizeMetrics size_metrics(const vcs::CommitRecord& commit);

// Entropy of modified lines across files, normalised by log2(nf); 0 when
// nf <= 1 or nothing was modified.
DiffusionMetrics diffusion_metrics(const vcs::CommitRecord& commit);

HistoryMetrics history_metrics(const vcs::CommitRecord& commit, const HistoryIndex& index,
                               const MetricOptions& options = {});

// `actor_key` is an identity_key(); participation means authoring or
// reviewing.
ExperienceMetrics experience_metrics(const vcs::CommitRecord& commit, std::string_view actor_key,
                                     const HistoryIndex& index, const MetricOptions& options = {});

ReviewMetrics review_metrics(const ReviewRecord& record);

// Computes every property for every commit by folding the history in time
// order (ties keep input order). Rows come out in that chronological order;
// is_bic is set for ids in `bic_ids`.
std::vector<ChangeMetrics> compute_change_metrics(const std::vector<vcs::CommitRecord>& commits,
                                                  const ReviewMap& reviews, const std::set<std::string>& bic_ids,
                                                  const MetricOptions& options = {});

}  // namespace jitlab::metrics
