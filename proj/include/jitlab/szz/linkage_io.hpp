#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "jitlab/szz/linkage.hpp"

namespace jitlab::szz {

nlohmann::json to_json(const BugLinkage& linkage);
BugLinkage linkage_from_json(const nlohmann::json& j);

void write_linkages(const std::filesystem::path& path, const std::vector<BugLinkage>& linkages);
std::vector<BugLinkage> read_linkages(const std::filesystem::path& path);

// Suspicious-change annotation: one commit id per line ('#' comments ok),
// or a CSV with a `commit_id` column.
std::set<std::string> read_suspicious_annotations(const std::filesystem::path& path);

}  // namespace jitlab::szz
