#pragma once

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "jitlab/vcs/commit.hpp"

namespace jitlab::vcs {

nlohmann::json to_json(const FileDelta& delta);
nlohmann::json to_json(const CommitRecord& commit);
FileDelta file_delta_from_json(const nlohmann::json& j);
CommitRecord commit_from_json(const nlohmann::json& j);

// One CommitRecord per line.
void write_commits(const std::filesystem::path& path, const std::vector<CommitRecord>& commits);
std::vector<CommitRecord> read_commits(const std::filesystem::path& path);

}  // namespace jitlab::vcs
