#include "jitlab/metrics/change_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "jitlab/core/error.hpp"

namespace jitlab::metrics {
namespace {

// Union of the (time ordered) histories of a delta's current and former path.
std::vector<std::size_t> delta_history(const vcs::FileDelta& delta, const HistoryIndex& index) {
  std::vector<std::size_t> out = index.file_history(delta.path);
  if (!delta.old_path.empty() && delta.old_path != delta.path) {
    const auto& former = index.file_history(delta.old_path);
    std::vector<std::size_t> merged;
    std::set_union(out.begin(), out.end(), former.begin(), former.end(), std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

}  // namespace

SizeMetrics size_metrics(const vcs::CommitRecord& commit) {
  SizeMetrics m;
  for (const auto& f : commit.files) {
    m.la += f.lines_added;
    m.ld += f.lines_deleted;
  }
  return m;
}

DiffusionMetrics diffusion_metrics(const vcs::CommitRecord& commit) {
  DiffusionMetrics m;
  std::set<std::string> files, dirs, subs;
  for (const auto& f : commit.files) {
    files.insert(f.path);
    dirs.insert(directory_of(f.path));
    subs.insert(subsystem_of(f.path));
  }
  m.nf = static_cast<long long>(files.size());
  m.nd = static_cast<long long>(dirs.size());
  m.ns = static_cast<long long>(subs.size());

  double total = 0.0;
  for (const auto& f : commit.files) total += f.lines_added + f.lines_deleted;
  if (m.nf <= 1 || total <= 0.0) return m;
  double h = 0.0;
  for (const auto& f : commit.files) {
    const double p = (f.lines_added + f.lines_deleted) / total;
    if (p > 0.0) h -= p * std::log2(p);
  }
  m.ent = std::clamp(h / std::log2(static_cast<double>(m.nf)), 0.0, 1.0);
  return m;
}

HistoryMetrics history_metrics(const vcs::CommitRecord& commit, const HistoryIndex& index,
                               const MetricOptions& options) {
  HistoryMetrics m;
  std::unordered_set<std::size_t> changes;
  std::unordered_set<std::string> devs;
  std::vector<double> ages;
  for (const auto& f : commit.files) {
    const auto history = delta_history(f, index);
    if (history.empty()) continue;
    for (auto i : history) {
      changes.insert(i);
      devs.insert(index.change(i).author_key);
    }
    const Timestamp last = index.change(history.back()).time;
    ages.push_back(std::max(0.0, days_between(last, commit.author_time)));
  }
  m.nuc = static_cast<long long>(changes.size());
  m.ndev = static_cast<long long>(devs.size());
  if (!ages.empty()) {
    m.age = options.age == AgeAggregation::kMean
                ? std::accumulate(ages.begin(), ages.end(), 0.0) / static_cast<double>(ages.size())
                : *std::max_element(ages.begin(), ages.end());
  }
  return m;
}

ExperienceMetrics experience_metrics(const vcs::CommitRecord& commit, std::string_view actor_key,
                                     const HistoryIndex& index, const MetricOptions& options) {
  ExperienceMetrics m;
  const auto& mine = index.participations(actor_key);
  if (mine.empty()) return m;
  const auto subsystems = subsystems_of(commit);

  m.exp = static_cast<double>(mine.size());
  for (auto i : mine) {
    const double years = std::max(0.0, days_between(index.change(i).time, commit.author_time)) / options.days_per_year;
    m.rexp += 1.0 / (years + 1.0);
  }

  std::unordered_set<std::size_t> subsystem_changes;
  for (const auto& sub : subsystems) {
    const auto& h = index.subsystem_history(sub);
    subsystem_changes.insert(h.begin(), h.end());
  }
  for (auto i : mine) {
    if (subsystem_changes.count(i)) m.sexp += 1.0;
  }
  if (!subsystem_changes.empty()) m.awr = m.sexp / static_cast<double>(subsystem_changes.size());
  return m;
}

ReviewMetrics review_metrics(const ReviewRecord& record) {
  validate(record);
  return {record.revisions, static_cast<long long>(record.voters.size()), record.human_nonowner_comments,
          days_between(record.created_time, record.approved_time)};
}

std::vector<ChangeMetrics> compute_change_metrics(const std::vector<vcs::CommitRecord>& commits,
                                                  const ReviewMap& reviews, const std::set<std::string>& bic_ids,
                                                  const MetricOptions& options) {
  std::vector<std::size_t> order(commits.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return commits[a].author_time < commits[b].author_time;
  });

  HistoryIndex index;
  std::vector<ChangeMetrics> rows;
  rows.reserve(commits.size());
  for (auto i : order) {
    const auto& c = commits[i];
    ChangeMetrics row;
    row.change_id = c.id;
    row.author = c.author;
    row.time = c.author_time;

    const auto size = size_metrics(c);
    row.la = size.la;
    row.ld = size.ld;
    const auto diff = diffusion_metrics(c);
    row.ns = diff.ns;
    row.nd = diff.nd;
    row.nf = diff.nf;
    row.ent = diff.ent;
    const auto hist = history_metrics(c, index, options);
    row.nuc = hist.nuc;
    row.ndev = hist.ndev;
    row.age = hist.age;
    const auto author = experience_metrics(c, identity_key(c.author), index, options);
    row.aexp = author.exp;
    row.arexp = author.rexp;
    row.asexp = author.sexp;
    row.asawr = author.awr;

    std::vector<std::string> reviewer_keys;
    if (auto it = reviews.find(c.id); it != reviews.end()) {
      const auto review = review_metrics(it->second);
      row.nrev = review.nrev;
      row.app = review.app;
      row.hcmt = review.hcmt;
      row.rtime = review.rtime;
      std::set<std::string> keys;
      for (const auto& r : it->second.reviewers) keys.insert(identity_key(r));
      reviewer_keys.assign(keys.begin(), keys.end());
      if (!reviewer_keys.empty()) {
        ExperienceMetrics total;
        for (const auto& key : reviewer_keys) {
          const auto e = experience_metrics(c, key, index, options);
          total.exp += e.exp;
          total.rexp += e.rexp;
          total.sexp += e.sexp;
          total.awr += e.awr;
        }
        const double scale =
            options.reviewers == ReviewerAggregation::kMean ? 1.0 / static_cast<double>(reviewer_keys.size()) : 1.0;
        row.rexp = total.exp * scale;
        row.rrexp = total.rexp * scale;
        row.rsexp = total.sexp * scale;
        row.rsawr = total.awr * scale;
      }
    } else {
      row.missing_review = true;
    }

    row.is_bic = bic_ids.count(c.id) > 0;
    rows.push_back(std::move(row));
    index.add(c, reviewer_keys);
  }
  return rows;
}

}  // namespace jitlab::metrics
