#include "jitlab/vcs/commit_io.hpp"

#include "jitlab/core/jsonl.hpp"

namespace jitlab::vcs {
namespace {

nlohmann::json kinds_to_json(const std::map<int, LineKind>& kinds) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [line, kind] : kinds) out[std::to_string(line)] = std::string(to_string(kind));
  return out;
}

std::map<int, LineKind> kinds_from_json(const nlohmann::json& j) {
  std::map<int, LineKind> out;
  for (const auto& [key, value] : j.items()) out.emplace(std::stoi(key), line_kind_from_string(value.get<std::string>()));
  return out;
}

}  // namespace

nlohmann::json to_json(const FileDelta& d) {
  return {{"path", d.path},
          {"old_path", d.old_path},
          {"status", std::string(to_string(d.status))},
          {"binary", d.binary},
          {"lines_added", d.lines_added},
          {"lines_deleted", d.lines_deleted},
          {"added_line_numbers", d.added_line_numbers},
          {"deleted_line_numbers", d.deleted_line_numbers},
          {"line_kinds", kinds_to_json(d.line_kinds)},
          {"deleted_line_kinds", kinds_to_json(d.deleted_line_kinds)}};
}

nlohmann::json to_json(const CommitRecord& c) {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : c.files) files.push_back(to_json(f));
  return {{"id", c.id},
          {"author", c.author},
          {"author_time", to_epoch(c.author_time)},
          {"commit_time", to_epoch(c.commit_time)},
          {"message", c.message},
          {"parents", c.parents},
          {"files", std::move(files)}};
}

FileDelta file_delta_from_json(const nlohmann::json& j) {
  FileDelta d;
  d.path = j.at("path").get<std::string>();
  d.old_path = j.value("old_path", d.path);
  d.status = change_status_from_string(j.value("status", "modified"));
  d.binary = j.value("binary", false);
  d.added_line_numbers = j.value("added_line_numbers", std::vector<int>{});
  d.deleted_line_numbers = j.value("deleted_line_numbers", std::vector<int>{});
  d.lines_added = j.value("lines_added", static_cast<int>(d.added_line_numbers.size()));
  d.lines_deleted = j.value("lines_deleted", static_cast<int>(d.deleted_line_numbers.size()));
  if (j.contains("line_kinds")) d.line_kinds = kinds_from_json(j.at("line_kinds"));
  if (j.contains("deleted_line_kinds")) d.deleted_line_kinds = kinds_from_json(j.at("deleted_line_kinds"));
  return d;
}

CommitRecord commit_from_json(const nlohmann::json& j) {
  CommitRecord c;
  c.id = j.at("id").get<std::string>();
  c.author = j.value("author", "");
  c.author_time = from_epoch(j.at("author_time").get<std::int64_t>());
  c.commit_time = from_epoch(j.value("commit_time", to_epoch(c.author_time)));
  c.message = j.value("message", "");
  c.parents = j.value("parents", std::vector<std::string>{});
  if (j.contains("files")) {
    for (const auto& f : j.at("files")) c.files.push_back(file_delta_from_json(f));
  }
  return c;
}

void write_commits(const std::filesystem::path& path, const std::vector<CommitRecord>& commits) {
  jsonl::write(path, commits, [](const CommitRecord& c) { return to_json(c); });
}

std::vector<CommitRecord> read_commits(const std::filesystem::path& path) {
  std::vector<CommitRecord> commits;
  jsonl::for_each(path, [&](const nlohmann::json& j) { commits.push_back(commit_from_json(j)); });
  return commits;
}

}  // namespace jitlab::vcs
