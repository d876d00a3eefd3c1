#include "jitlab/curation/label_store.hpp"

#include <algorithm>
#include <fstream>

#include "jitlab/core/error.hpp"
#include "jitlab/core/jsonl.hpp"
#include "jitlab/stats/krippendorff.hpp"

namespace jitlab::curation {

using nlohmann::json;

json to_json(const LabelRecord& r) {
  return {{"issue_id", r.issue_id},   {"rater", r.rater},
          {"verdict", to_string(r.verdict)}, {"rule_id", r.rule_id},
          {"rationale", r.rationale}, {"labeled_time", format_timestamp(r.labeled_time)},
          {"revision", r.revision}};
}

LabelRecord label_from_json(const json& j) {
  LabelRecord r;
  r.issue_id = j.at("issue_id").get<std::string>();
  r.rater = j.at("rater").get<std::string>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.rule_id = j.at("rule_id").get<std::string>();
  r.rationale = j.value("rationale", "");
  if (j.contains("labeled_time")) r.labeled_time = parse_timestamp(j.at("labeled_time").get<std::string>());
  r.revision = j.value("revision", 1);
  return r;
}

json to_json(const Resolution& r) {
  return {{"issue_id", r.issue_id},   {"verdict", to_string(r.verdict)},
          {"rule_id", r.rule_id},     {"rationale", r.rationale},
          {"resolver", r.resolver},   {"resolved_time", format_timestamp(r.resolved_time)}};
}

Resolution resolution_from_json(const json& j) {
  Resolution r;
  r.issue_id = j.at("issue_id").get<std::string>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.rule_id = j.at("rule_id").get<std::string>();
  r.rationale = j.value("rationale", "");
  r.resolver = j.value("resolver", "");
  if (j.contains("resolved_time")) r.resolved_time = parse_timestamp(j.at("resolved_time").get<std::string>());
  return r;
}

json to_json(const AgreementReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"alpha_bug_vs_not", opt(r.alpha_bug_vs_not)},
          {"alpha_intrinsic_vs_extrinsic", opt(r.alpha_intrinsic_vs_extrinsic)},
          {"disagreements", r.disagreements},
          {"coverage", r.coverage},
          {"double_rated", r.double_rated},
          {"both_bug", r.both_bug}};
}

LabelStore::LabelStore(std::set<std::string> issues, std::optional<std::filesystem::path> log_path, Clock clock)
    : issues_(std::move(issues)), log_path_(std::move(log_path)), clock_(std::move(clock)) {
  if (!clock_) {
    clock_ = [] { return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now()); };
  }
  if (log_path_ && std::filesystem::exists(*log_path_)) {
    jsonl::for_each(*log_path_, [&](const json& event) {
      apply_event(event);
      events_.push_back(event);
    });
  }
}

void LabelStore::append_event(const json& event) {
  if (log_path_) {
    if (log_path_->has_parent_path()) std::filesystem::create_directories(log_path_->parent_path());
    std::ofstream out(*log_path_, std::ios::binary | std::ios::app);
    out << event.dump() << '\n';
    out.flush();
    if (!out) throw DataError("cannot append to " + log_path_->string());
  }
  events_.push_back(event);
}

void LabelStore::apply_event(const json& event) {
  const auto type = event.at("event").get<std::string>();
  if (type == "label") {
    auto r = label_from_json(event.at("record"));
    labels_[{r.issue_id, r.rater}] = std::move(r);
  } else if (type == "resolution") {
    auto r = resolution_from_json(event.at("record"));
    resolutions_[r.issue_id] = std::move(r);
  } else {
    throw DataError("unknown label-store event '" + type + "'");
  }
}

LabelRecord LabelStore::record_label(const std::string& issue_id, const std::string& rater, Verdict verdict,
                                     const std::string& rule_id, const std::string& rationale,
                                     std::optional<int> expected_revision) {
  if (rater.empty()) throw DataError("rater is required");
  if (!issues_.count(issue_id)) throw DataError("unknown issue '" + issue_id + "'");
  RuleCatalog::standard().check(verdict, rule_id);

  std::lock_guard lock(mutex_);
  const auto key = std::make_pair(issue_id, rater);
  const auto it = labels_.find(key);
  const int current = it == labels_.end() ? 0 : it->second.revision;
  if (expected_revision && *expected_revision != current) {
    throw ConflictError("label of issue '" + issue_id + "' by '" + rater + "' is at revision " +
                        std::to_string(current) + ", not " + std::to_string(*expected_revision));
  }
  LabelRecord r{issue_id, rater, verdict, rule_id, rationale, clock_(), current + 1};
  const json event = {{"event", "label"}, {"record", to_json(r)}};
  append_event(event);
  labels_[key] = r;
  return r;
}

Resolution LabelStore::resolve(const std::string& issue_id, Verdict verdict, const std::string& rule_id,
                               const std::string& rationale, const std::string& resolver) {
  if (!issues_.count(issue_id)) throw DataError("unknown issue '" + issue_id + "'");
  RuleCatalog::standard().check(verdict, rule_id);
  std::lock_guard lock(mutex_);
  Resolution r{issue_id, verdict, rule_id, rationale, resolver, clock_()};
  append_event({{"event", "resolution"}, {"record", to_json(r)}});
  resolutions_[issue_id] = r;
  return r;
}

std::optional<LabelRecord> LabelStore::label(const std::string& issue_id, const std::string& rater) const {
  std::lock_guard lock(mutex_);
  auto it = labels_.find({issue_id, rater});
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::vector<LabelRecord> LabelStore::labels() const {
  std::lock_guard lock(mutex_);
  std::vector<LabelRecord> out;
  for (const auto& [_, r] : labels_) out.push_back(r);
  return out;
}

std::vector<LabelRecord> LabelStore::labels_for(const std::string& issue_id) const {
  std::lock_guard lock(mutex_);
  std::vector<LabelRecord> out;
  for (auto it = labels_.lower_bound({issue_id, ""}); it != labels_.end() && it->first.first == issue_id; ++it) {
    out.push_back(it->second);
  }
  return out;
}

std::vector<json> LabelStore::audit_log() const {
  std::lock_guard lock(mutex_);
  return events_;
}

std::vector<Disagreement> LabelStore::disagreements_locked() const {
  std::vector<Disagreement> out;
  for (auto it = labels_.begin(); it != labels_.end();) {
    Disagreement d{it->first.first, {}};
    for (; it != labels_.end() && it->first.first == d.issue_id; ++it) d.labels.push_back(it->second);
    if (resolutions_.count(d.issue_id)) continue;
    const bool split = std::any_of(d.labels.begin(), d.labels.end(),
                                   [&](const LabelRecord& r) { return r.verdict != d.labels.front().verdict; });
    if (split) out.push_back(std::move(d));
  }
  return out;
}

std::vector<Disagreement> LabelStore::disagreements() const {
  std::lock_guard lock(mutex_);
  return disagreements_locked();
}

AgreementReport LabelStore::agreement_report() const {
  std::lock_guard lock(mutex_);
  std::vector<std::vector<std::string>> bug_units, type_units;
  AgreementReport report;
  for (auto it = labels_.begin(); it != labels_.end();) {
    const std::string issue = it->first.first;
    std::vector<Verdict> verdicts;
    for (; it != labels_.end() && it->first.first == issue; ++it) verdicts.push_back(it->second.verdict);
    if (verdicts.size() < 2) continue;
    ++report.double_rated;
    std::vector<std::string> bug;
    for (auto v : verdicts) bug.emplace_back(is_bug(v) ? "bug" : "not_bug");
    bug_units.push_back(std::move(bug));
    if (std::all_of(verdicts.begin(), verdicts.end(), is_bug)) {
      ++report.both_bug;
      std::vector<std::string> type;
      for (auto v : verdicts) type.emplace_back(to_string(v));
      type_units.push_back(std::move(type));
    }
  }
  if (report.double_rated == 0) throw DataError("agreement needs at least one issue rated by 2 raters");
  report.alpha_bug_vs_not = stats::krippendorff_alpha_nominal(bug_units);
  if (!type_units.empty()) report.alpha_intrinsic_vs_extrinsic = stats::krippendorff_alpha_nominal(type_units);
  for (const auto& d : disagreements_locked()) report.disagreements.push_back(d.issue_id);
  const std::size_t corpus = issues_.empty() ? 1 : issues_.size();
  report.coverage = static_cast<double>(report.double_rated) / static_cast<double>(corpus);
  return report;
}

std::map<std::string, Verdict> LabelStore::consensus() const {
  std::lock_guard lock(mutex_);
  const auto conflicts = disagreements_locked();
  if (!conflicts.empty()) {
    std::string ids;
    for (const auto& d : conflicts) ids += (ids.empty() ? "" : ", ") + d.issue_id;
    throw DataError(std::to_string(conflicts.size()) + " unresolved rater disagreement(s): " + ids);
  }
  std::map<std::string, Verdict> out;
  for (const auto& [key, r] : labels_) out.emplace(key.first, r.verdict);
  for (const auto& [issue, r] : resolutions_) out[issue] = r.verdict;
  return out;
}

void LabelStore::import_labels(const std::vector<LabelRecord>& records) {
  for (const auto& r : records) {
    if (!issues_.count(r.issue_id)) throw DataError("unknown issue '" + r.issue_id + "'");
    RuleCatalog::standard().check(r.verdict, r.rule_id);
  }
  std::lock_guard lock(mutex_);
  for (auto r : records) {
    const auto key = std::make_pair(r.issue_id, r.rater);
    const auto it = labels_.find(key);
    r.revision = it == labels_.end() ? 1 : it->second.revision + 1;
    if (r.labeled_time == Timestamp{}) r.labeled_time = clock_();
    append_event({{"event", "label"}, {"record", to_json(r)}});
    labels_[key] = r;
  }
}

std::vector<LabelRecord> read_labels(const std::filesystem::path& path) {
  std::vector<LabelRecord> out;
  jsonl::for_each(path, [&](const json& j) { out.push_back(label_from_json(j)); });
  return out;
}

void write_labels(const std::filesystem::path& path, const std::vector<LabelRecord>& records) {
  jsonl::write(path, records, [](const LabelRecord& r) { return to_json(r); });
}

}  // namespace jitlab::curation
