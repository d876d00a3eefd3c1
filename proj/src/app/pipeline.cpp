#include "jitlab/app/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <spdlog/spdlog.h>

#include "jitlab/app/stages.hpp"
#include "jitlab/core/checksum.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/vcs/repository.hpp"

namespace jitlab::app {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view tool_version() { return JITLAB_VERSION; }

namespace {

using StageFn = std::vector<std::string> (*)(const PipelineConfig&, const fs::path&);

struct StageDef {
  std::string name;
  StageFn run;
  std::vector<std::string> upstream;     // stages whose outputs are inputs
  std::vector<std::string> config_keys;  // settings that change the output
  // External input files.
  std::function<std::vector<fs::path>(const PipelineConfig&)> files;
};

std::vector<fs::path> none(const PipelineConfig&) { return {}; }

const std::vector<StageDef>& stages() {
  static const std::vector<StageDef> defs = {
      {"mine", mine_stage, {}, {"repo", "branch", "merge_mode", "rename_similarity"}, none},
      {"link", link_stage, {"mine"}, {"pattern"}, [](const PipelineConfig& c) { return std::vector{c.issues}; }},
      {"szz",
       szz_stage,
       {"mine", "link"},
       {"repo", "merge_mode", "rename_similarity", "cosmetic_filter", "date_filter", "date_basis"},
       [](const PipelineConfig& c) {
         std::vector<fs::path> f{c.issues};
         if (c.suspicious) f.push_back(*c.suspicious);
         return f;
       }},
      {"metrics",
       metrics_stage,
       {"mine", "szz"},
       {"days_per_year", "age_aggregation", "reviewer_aggregation"},
       [](const PipelineConfig& c) { return c.reviews ? std::vector{*c.reviews} : std::vector<fs::path>{}; }},
      {"filter",
       filter_stage,
       {"metrics", "szz"},
       {"churn_threshold", "files_threshold", "drop_mislabeled", "months"},
       [](const PipelineConfig& c) {
         std::vector<fs::path> f{c.issues};
         if (c.labels) f.push_back(*c.labels);
         return f;
       }},
      {"stratify", stratify_stage, {"filter"}, {"months"}, none},
      {"fit",
       fit_stage,
       {"filter"},
       {"months", "scheme", "rho_threshold", "r2_threshold", "redundancy_transform", "spline_df"},
       none},
      {"evaluate", evaluate_stage, {"filter", "fit"}, {"months", "scheme"}, none},
      {"importance", importance_stage, {"filter", "fit"}, {"months", "scheme", "normalization"}, none},
      {"stability", stability_stage, {"filter", "fit"}, {"months", "scheme", "normalization"}, none},
      {"stats",
       stats_stage,
       {"metrics", "szz"},
       {"wilcoxon_exact_max"},
       [](const PipelineConfig& c) {
         std::vector<fs::path> f{c.issues};
         if (c.labels) f.push_back(*c.labels);
         return f;
       }},
  };
  return defs;
}

std::string fingerprint(const StageDef& def, const PipelineConfig& config, const RunManifest& manifest) {
  const auto snap = snapshot(config);
  std::string text = "stage " + def.name + "\n";
  for (const auto& key : def.config_keys) text += key + "=" + snap.at(key) + "\n";
  for (const auto& f : def.files(config)) {
    if (!fs::exists(f)) throw DataError("stage '" + def.name + "': input " + f.string() + " does not exist");
    text += "file " + f.filename().string() + " " + sha256_file(f) + "\n";
  }
  if (def.name == "mine" || def.name == "szz") {
    // The repository content is an input; its branch tip pins it.
    const auto repo = vcs::Repository::open(config.repo);
    text += "tip " + repo.resolve(config.branch).value_or("<none>") + "\n";
  }
  for (const auto& up : def.upstream) {
    const auto* rec = manifest.find(up);
    if (!rec) throw UsageError("stage '" + def.name + "' needs stage '" + up + "' to have run");
    for (const auto& [path, sum] : rec->outputs) text += "input " + path + " " + sum + "\n";
  }
  return sha256_hex(text);
}

bool outputs_intact(const StageRecord& rec, const fs::path& out) {
  for (const auto& [path, sum] : rec.outputs) {
    const auto p = out / path;
    if (!fs::exists(p) || sha256_file(p) != sum) return false;
  }
  return true;
}

std::string now_iso() {
  return format_timestamp(std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now()));
}

void write_manifest(const fs::path& out, const RunManifest& m) {
  fs::create_directories(out);
  const auto tmp = out / "manifest.json.tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    o << to_json(m).dump(2) << '\n';
    if (!o) throw DataError("cannot write manifest in " + out.string());
  }
  fs::rename(tmp, out / "manifest.json");
}

}  // namespace

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& d : stages()) n.push_back(d.name);
    return n;
  }();
  return names;
}

const StageRecord* RunManifest::find(std::string_view stage) const {
  for (const auto& s : stages) {
    if (s.name == stage) return &s;
  }
  return nullptr;
}

json to_json(const RunManifest& m) {
  json stages_json = json::array();
  for (const auto& s : m.stages) {
    stages_json.push_back(
        {{"name", s.name}, {"fingerprint", s.fingerprint}, {"outputs", s.outputs}, {"reused", s.reused}});
  }
  return {{"run_id", m.run_id},
          {"tool_version", m.tool_version},
          {"config", m.config},
          {"stages", stages_json},
          {"timestamps", m.timestamps}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.run_id = j.at("run_id").get<std::string>();
  m.tool_version = j.at("tool_version").get<std::string>();
  m.config = j.at("config").get<std::map<std::string, std::string>>();
  for (const auto& s : j.at("stages")) {
    m.stages.push_back({s.at("name").get<std::string>(), s.at("fingerprint").get<std::string>(),
                        s.at("outputs").get<std::map<std::string, std::string>>(), s.value("reused", false)});
  }
  m.timestamps = j.value("timestamps", std::map<std::string, std::string>{});
  return m;
}

std::optional<RunManifest> read_manifest(const fs::path& output) {
  const auto p = output / "manifest.json";
  if (!fs::exists(p)) return std::nullopt;
  std::ifstream in(p, std::ios::binary);
  try {
    return manifest_from_json(json::parse(in));
  } catch (const json::exception& e) {
    spdlog::warn("ignoring unreadable manifest {}: {}", p.string(), e.what());
    return std::nullopt;
  }
}

RunManifest run_pipeline(const PipelineConfig& config, const RunOptions& options) {
  validate(config);
  for (const auto& o : options.only) {
    if (std::find(stage_names().begin(), stage_names().end(), o) == stage_names().end()) {
      throw UsageError("unknown stage '" + o + "'");
    }
  }
  const fs::path out = config.output;
  fs::create_directories(out);
  const auto previous = read_manifest(out);

  RunManifest manifest;
  manifest.tool_version = std::string(tool_version());
  manifest.config = snapshot(config);
  {
    auto id_source = manifest.config;
    id_source.erase("jobs");
    id_source.erase("output");
    std::string text;
    for (const auto& [k, v] : id_source) text += k + "=" + v + "\n";
    manifest.run_id = sha256_hex(text).substr(0, 16);
  }
  manifest.timestamps["started"] = now_iso();

  for (const auto& def : stages()) {
    const bool selected =
        options.only.empty() || std::find(options.only.begin(), options.only.end(), def.name) != options.only.end();
    const StageRecord* before = previous ? previous->find(def.name) : nullptr;
    if (!selected) {
      // Carry the previous record so later selected stages can see inputs.
      if (before) manifest.stages.push_back(*before);
      continue;
    }

    const auto fp = fingerprint(def, config, manifest);
    if (!options.force && before && before->fingerprint == fp && outputs_intact(*before, out)) {
      spdlog::info("stage {}: unchanged, reusing outputs", def.name);
      StageRecord rec = *before;
      rec.reused = true;
      manifest.stages.push_back(std::move(rec));
      write_manifest(out, manifest);
      continue;
    }

    spdlog::info("stage {}: running", def.name);
    manifest.timestamps[def.name + ".started"] = now_iso();
    StageRecord rec{def.name, fp, {}, false};
    const std::string where = "stage '" + def.name + "' failed (input checksum " + fp.substr(0, 16) + "): ";
    try {
      for (const auto& rel : def.run(config, out)) rec.outputs[rel] = sha256_file(out / rel);
    } catch (const UsageError& e) {
      throw UsageError(where + e.what());
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error(where + e.what());
    }
    manifest.timestamps[def.name + ".finished"] = now_iso();
    manifest.stages.push_back(std::move(rec));
    write_manifest(out, manifest);
  }
  manifest.timestamps["finished"] = now_iso();
  write_manifest(out, manifest);
  return manifest;
}

}  // namespace jitlab::app
