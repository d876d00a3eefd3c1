#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "jitlab/core/time.hpp"
#include "jitlab/curation/rule_catalog.hpp"

namespace jitlab::curation {

struct LabelRecord {
  std::string issue_id;
  std::string rater;
  Verdict verdict = Verdict::kIntrinsic;
  std::string rule_id;
  std::string rationale;
  Timestamp labeled_time{};
  // 1 for the first label of (issue, rater), incremented on each overwrite.
  // Writers that overwrite quote the revision they saw.
  int revision = 1;
};

// The outcome of a meeting that settled a disagreement.
struct Resolution {
  std::string issue_id;
  Verdict verdict = Verdict::kIntrinsic;
  std::string rule_id;
  std::string rationale;
  std::string resolver;
  Timestamp resolved_time{};
};

struct Disagreement {
  std::string issue_id;
  std::vector<LabelRecord> labels;
};

struct AgreementReport {
  // Absent when no pairable issue exists for that dichotomy.
  std::optional<double> alpha_bug_vs_not;
  std::optional<double> alpha_intrinsic_vs_extrinsic;
  std::vector<std::string> disagreements;  // unresolved, sorted
  double coverage = 0.0;                   // double-rated / corpus issues
  std::size_t double_rated = 0;
  std::size_t both_bug = 0;
};

nlohmann::json to_json(const LabelRecord& r);
LabelRecord label_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Resolution& r);
Resolution resolution_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AgreementReport& r);

// Thread-safe label store. Every accepted write is appended to an event log
// (newline JSON) before it becomes visible, so the log is the audit trail
// and replaying it rebuilds the state.
class LabelStore {
 public:
  using Clock = std::function<Timestamp()>;

  // `issues` is the corpus a label may refer to. Without `log_path` the store
  // is memory-only.
  explicit LabelStore(std::set<std::string> issues, std::optional<std::filesystem::path> log_path = std::nullopt,
                      Clock clock = {});

  // Throws DataError for an unknown issue or rule or a verdict/rule section
  // mismatch, and ConflictError when `expected_revision` is given and differs
  // from the stored revision (0 meaning "no label yet").
  LabelRecord record_label(const std::string& issue_id, const std::string& rater, Verdict verdict,
                           const std::string& rule_id, const std::string& rationale,
                           std::optional<int> expected_revision = std::nullopt);

  Resolution resolve(const std::string& issue_id, Verdict verdict, const std::string& rule_id,
                     const std::string& rationale, const std::string& resolver);

  std::optional<LabelRecord> label(const std::string& issue_id, const std::string& rater) const;
  std::vector<LabelRecord> labels() const;  // sorted by (issue, rater)
  std::vector<LabelRecord> labels_for(const std::string& issue_id) const;
  std::vector<nlohmann::json> audit_log() const;
  const std::set<std::string>& issues() const { return issues_; }

  std::vector<Disagreement> disagreements() const;  // unresolved only

  // Throws DataError when no issue is rated by 2 or more raters.
  AgreementReport agreement_report() const;

  // One verdict per labeled issue: the resolution if any, otherwise the
  // unanimous verdict. Throws DataError listing unresolved conflicts.
  std::map<std::string, Verdict> consensus() const;

  // Records exported labels as audited writes, overwriting same-rater labels.
  void import_labels(const std::vector<LabelRecord>& records);

 private:
  void append_event(const nlohmann::json& event);
  void apply_event(const nlohmann::json& event);
  std::vector<Disagreement> disagreements_locked() const;

  std::set<std::string> issues_;
  std::optional<std::filesystem::path> log_path_;
  Clock clock_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::string>, LabelRecord> labels_;
  std::map<std::string, Resolution> resolutions_;
  std::vector<nlohmann::json> events_;
};

std::vector<LabelRecord> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const std::vector<LabelRecord>& records);

}  // namespace jitlab::curation
