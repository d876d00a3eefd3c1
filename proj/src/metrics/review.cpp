#include "jitlab/metrics/review.hpp"

#include <algorithm>
#include <cctype>

#include "jitlab/core/csv.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/core/jsonl.hpp"
#include "jitlab/core/numfmt.hpp"

namespace jitlab::metrics {
namespace {

std::set<std::string> split_identities(const std::string& text) {
  std::set<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    const auto b = item.find_first_not_of(" \t");
    if (b != std::string::npos) {
      const auto e = item.find_last_not_of(" \t");
      out.insert(item.substr(b, e - b + 1));
    }
    pos = end + 1;
  }
  return out;
}

Timestamp json_time(const nlohmann::json& j) {
  return j.is_number() ? from_epoch(j.get<std::int64_t>()) : parse_timestamp(j.get<std::string>());
}

}  // namespace

void validate(const ReviewRecord& r) {
  if (r.approved_time < r.created_time) {
    throw DataError("review of " + r.change_id + " approved before it was created");
  }
  if (r.revisions < 1) throw DataError("review of " + r.change_id + " has fewer than one revision");
  if (r.human_nonowner_comments < 0) throw DataError("review of " + r.change_id + " has a negative comment count");
}

std::vector<ReviewRecord> read_reviews(const std::filesystem::path& path) {
  std::vector<ReviewRecord> out;
  if (path.extension() == ".csv") {
    const auto table = csv::Table::read_file(path);
    const auto id = table.require_column("change_id");
    const auto created = table.require_column("created_time");
    const auto approved = table.require_column("approved_time");
    const auto revisions = table.require_column("revisions");
    const auto voters = table.column("voters");
    const auto comments = table.column("human_nonowner_comments");
    const auto reviewers = table.column("reviewers");
    for (const auto& row : table.rows()) {
      ReviewRecord r;
      r.change_id = row[id];
      r.created_time = parse_timestamp(row[created]);
      r.approved_time = parse_timestamp(row[approved]);
      r.revisions = static_cast<int>(parse_integer(row[revisions]));
      if (voters) r.voters = split_identities(row[*voters]);
      if (comments && !row[*comments].empty()) r.human_nonowner_comments = static_cast<int>(parse_integer(row[*comments]));
      if (reviewers) r.reviewers = split_identities(row[*reviewers]);
      validate(r);
      out.push_back(std::move(r));
    }
  } else {
    jsonl::for_each(path, [&](const nlohmann::json& j) {
      ReviewRecord r;
      r.change_id = j.at("change_id").get<std::string>();
      r.created_time = json_time(j.at("created_time"));
      r.approved_time = json_time(j.at("approved_time"));
      r.revisions = j.value("revisions", 1);
      r.voters = j.value("voters", std::set<std::string>{});
      r.human_nonowner_comments = j.value("human_nonowner_comments", 0);
      r.reviewers = j.value("reviewers", std::set<std::string>{});
      validate(r);
      out.push_back(std::move(r));
    });
  }
  return out;
}

ReviewMap index_reviews(std::vector<ReviewRecord> reviews) {
  ReviewMap map;
  for (auto& r : reviews) {
    const std::string id = r.change_id;
    if (!map.emplace(id, std::move(r)).second) throw DataError("duplicate review record for change " + id);
  }
  return map;
}

std::string identity_key(std::string_view identity) {
  std::string_view view = identity;
  const auto lt = view.find('<');
  const auto gt = view.rfind('>');
  if (lt != std::string_view::npos && gt != std::string_view::npos && gt > lt + 1) {
    view = view.substr(lt + 1, gt - lt - 1);
  }
  while (!view.empty() && std::isspace(static_cast<unsigned char>(view.front()))) view.remove_prefix(1);
  while (!view.empty() && std::isspace(static_cast<unsigned char>(view.back()))) view.remove_suffix(1);
  std::string out(view);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace jitlab::metrics
