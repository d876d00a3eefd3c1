#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "jitlab/app/config.hpp"

namespace jitlab::app {

std::string_view tool_version();

// Stage names in execution order.
const std::vector<std::string>& stage_names();

struct StageRecord {
  std::string name;
  std::string fingerprint;                     // config subset + input checksums
  std::map<std::string, std::string> outputs;  // relative path -> sha256
  bool reused = false;
};

struct RunManifest {
  std::string run_id;
  std::string tool_version;
  std::map<std::string, std::string> config;
  std::vector<StageRecord> stages;
  // Wall-clock times; the only nondeterministic part of a run.
  std::map<std::string, std::string> timestamps;

  const StageRecord* find(std::string_view stage) const;
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);
std::optional<RunManifest> read_manifest(const std::filesystem::path& output);

struct RunOptions {
  // Run only these stages (their inputs must already exist); empty = all.
  std::vector<std::string> only;
  // Recompute even when a stage's fingerprint and outputs are unchanged.
  bool force = false;
};

// Runs the stages in order, reusing any stage whose fingerprint matches the
// previous manifest and whose outputs are intact. The manifest is rewritten
// after every stage so an interrupted run resumes where it stopped. A
// failing stage aborts the run with its name and input checksum.
RunManifest run_pipeline(const PipelineConfig& config, const RunOptions& options = {});

}  // namespace jitlab::app
