#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "jitlab/eval/importance.hpp"
#include "jitlab/eval/schemes.hpp"

namespace jitlab::eval {

enum class GridValue { kAuc, kBrier, kDeltaAuc, kDeltaBrier };

// Matrix with one row per train period and one column per test period that
// has a cell; missing cells are "NA". Delta values subtract the train
// period's in-sample score.
void write_grid_csv(std::ostream& out, const SchemeResult& result, GridValue value);

// auc.csv, brier.csv, delta_auc.csv, delta_brier.csv under `dir`.
void export_heatmaps(const std::filesystem::path& dir, const SchemeResult& result);

// One row per (period, family).
void write_importance_csv(std::ostream& out, Scheme scheme, const std::vector<FamilyImportance>& series);

// FISDiff for every (train, future) pair i < j, one row per family.
void write_fis_diff_csv(std::ostream& out, Scheme scheme, const std::vector<FamilyImportance>& series);

// AUC(n + 1, m) - AUC(n, m) for every test period m scored by both.
void write_adjacent_stability_csv(std::ostream& out, const SchemeResult& result);

nlohmann::json summary_json(const SchemeResult& result);

// Writes through a stream into `path`, creating parent directories.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

}  // namespace jitlab::eval
