#include "jitlab/szz/linkage_io.hpp"

#include <fstream>

#include "jitlab/core/csv.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/core/jsonl.hpp"

namespace jitlab::szz {
namespace {

nlohmann::json candidate_to_json(const BicCandidate& c) {
  nlohmann::json evidence = nlohmann::json::array();
  for (const auto& e : c.evidence) {
    evidence.push_back({{"bfc_id", e.bfc_id},
                        {"path", e.path},
                        {"line", e.line},
                        {"origin_path", e.origin_path},
                        {"origin_line", e.origin_line},
                        {"kind", std::string(vcs::to_string(e.kind))}});
  }
  return {{"commit_id", c.commit_id},
          {"author_time", to_epoch(c.author_time)},
          {"commit_time", to_epoch(c.commit_time)},
          {"evidence", std::move(evidence)}};
}

BicCandidate candidate_from_json(const nlohmann::json& j) {
  BicCandidate c;
  c.commit_id = j.at("commit_id").get<std::string>();
  c.author_time = from_epoch(j.at("author_time").get<std::int64_t>());
  c.commit_time = from_epoch(j.value("commit_time", to_epoch(c.author_time)));
  for (const auto& e : j.value("evidence", nlohmann::json::array())) {
    c.evidence.push_back({e.value("bfc_id", ""), e.at("path").get<std::string>(), e.at("line").get<int>(),
                          e.value("origin_path", e.at("path").get<std::string>()),
                          e.value("origin_line", e.at("line").get<int>()),
                          vcs::line_kind_from_string(e.value("kind", "code"))});
  }
  return c;
}

}  // namespace

nlohmann::json to_json(const BugLinkage& l) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& c : l.bic_candidates) candidates.push_back(candidate_to_json(c));
  nlohmann::json dropped = nlohmann::json::array();
  for (const auto& d : l.dropped) {
    nlohmann::json reasons = nlohmann::json::array();
    for (auto r : d.reasons) reasons.push_back(std::string(to_string(r)));
    auto entry = candidate_to_json(d.candidate);
    entry["drop_reasons"] = std::move(reasons);
    dropped.push_back(std::move(entry));
  }
  return {{"issue_id", l.issue_id},
          {"bfc_ids", l.bfc_ids},
          {"bic_candidates", std::move(candidates)},
          {"dropped", std::move(dropped)},
          {"untraceable_bfcs", l.untraceable_bfcs},
          {"suspicious", l.suspicious}};
}

BugLinkage linkage_from_json(const nlohmann::json& j) {
  BugLinkage l;
  l.issue_id = j.at("issue_id").get<std::string>();
  l.bfc_ids = j.at("bfc_ids").get<std::vector<std::string>>();
  for (const auto& c : j.value("bic_candidates", nlohmann::json::array())) {
    l.bic_candidates.push_back(candidate_from_json(c));
  }
  for (const auto& d : j.value("dropped", nlohmann::json::array())) {
    DroppedCandidate dc{candidate_from_json(d), {}};
    for (const auto& r : d.value("drop_reasons", nlohmann::json::array())) {
      dc.reasons.insert(drop_reason_from_string(r.get<std::string>()));
    }
    l.dropped.push_back(std::move(dc));
  }
  l.untraceable_bfcs = j.value("untraceable_bfcs", std::vector<std::string>{});
  l.suspicious = j.value("suspicious", false);
  return l;
}

void write_linkages(const std::filesystem::path& path, const std::vector<BugLinkage>& linkages) {
  jsonl::write(path, linkages, [](const BugLinkage& l) { return to_json(l); });
}

std::vector<BugLinkage> read_linkages(const std::filesystem::path& path) {
  std::vector<BugLinkage> out;
  jsonl::for_each(path, [&](const nlohmann::json& j) { out.push_back(linkage_from_json(j)); });
  return out;
}

std::set<std::string> read_suspicious_annotations(const std::filesystem::path& path) {
  std::set<std::string> ids;
  if (path.extension() == ".csv") {
    const auto table = csv::Table::read_file(path);
    const auto col = table.require_column("commit_id");
    for (const auto& row : table.rows()) ids.insert(row[col]);
    return ids;
  }
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    ids.insert(line.substr(b, e - b + 1));
  }
  return ids;
}

}  // namespace jitlab::szz
