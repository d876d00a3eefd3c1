#include "jitlab/eval/export.hpp"

#include <fstream>
#include <set>

#include "jitlab/core/csv.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/core/numfmt.hpp"

namespace jitlab::eval {

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  body(out);
  if (!out) throw DataError("write failed: " + path.string());
}

void write_grid_csv(std::ostream& out, const SchemeResult& result, GridValue value) {
  std::set<int> trains, tests;
  std::map<std::pair<int, int>, const PeriodEval*> cells;
  for (const auto& c : result.cells) {
    trains.insert(c.train_period);
    tests.insert(c.test_period);
    cells[{c.train_period, c.test_period}] = &c;
  }
  csv::Row header{"train_period"};
  for (int t : tests) header.push_back(std::to_string(t));
  csv::write_row(out, header);
  for (int n : trains) {
    csv::Row row{std::to_string(n)};
    const auto& self = result.train_scores.at(n);
    for (int m : tests) {
      auto it = cells.find({n, m});
      if (it == cells.end()) {
        row.emplace_back("NA");
        continue;
      }
      const auto& c = *it->second;
      double v = 0.0;
      switch (value) {
        case GridValue::kAuc: v = c.auc; break;
        case GridValue::kBrier: v = c.brier; break;
        case GridValue::kDeltaAuc: v = c.auc - self.auc; break;
        case GridValue::kDeltaBrier: v = c.brier - self.brier; break;
      }
      row.push_back(format_double(v));
    }
    csv::write_row(out, row);
  }
}

void export_heatmaps(const std::filesystem::path& dir, const SchemeResult& result) {
  const std::pair<const char*, GridValue> files[] = {{"auc.csv", GridValue::kAuc},
                                                     {"brier.csv", GridValue::kBrier},
                                                     {"delta_auc.csv", GridValue::kDeltaAuc},
                                                     {"delta_brier.csv", GridValue::kDeltaBrier}};
  for (const auto& [name, value] : files) {
    write_file(dir / name, [&](std::ostream& out) { write_grid_csv(out, result, value); });
  }
}

void write_importance_csv(std::ostream& out, Scheme scheme, const std::vector<FamilyImportance>& series) {
  csv::write_row(out, {"scheme", "period", "family", "wald_chi2", "df", "p_value", "normalized", "testable"});
  for (const auto& imp : series) {
    for (const auto& s : imp.families) {
      csv::write_row(out, {std::string(to_string(scheme)), std::to_string(imp.period),
                           std::string(model::to_string(s.family)), format_double(s.wald.chi2),
                           std::to_string(s.wald.df), format_double(s.wald.p),
                           s.normalized ? format_double(*s.normalized) : "NA", s.wald.testable ? "1" : "0"});
    }
  }
}

void write_fis_diff_csv(std::ostream& out, Scheme scheme, const std::vector<FamilyImportance>& series) {
  csv::write_row(out, {"scheme", "train_period", "future_period", "family", "fis_train", "fis_future", "fis_diff"});
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      const auto diff = fis_diff(series[i], series[j]);
      for (const auto& [family, d] : diff) {
        const auto& a = series[i].at(family);
        const auto& b = series[j].at(family);
        csv::write_row(out, {std::string(to_string(scheme)), std::to_string(series[i].period),
                             std::to_string(series[j].period), std::string(model::to_string(family)),
                             a.normalized ? format_double(*a.normalized) : "NA",
                             b.normalized ? format_double(*b.normalized) : "NA", d ? format_double(*d) : "NA"});
      }
    }
  }
}

void write_adjacent_stability_csv(std::ostream& out, const SchemeResult& result) {
  std::map<std::pair<int, int>, double> auc;
  for (const auto& c : result.cells) auc[{c.train_period, c.test_period}] = c.auc;
  csv::write_row(out, {"scheme", "train_period", "next_train_period", "test_period", "auc", "next_auc", "delta_auc"});
  for (const auto& [key, a] : auc) {
    const auto [n, m] = key;
    auto it = auc.find({n + 1, m});
    if (it == auc.end()) continue;
    csv::write_row(out, {std::string(to_string(result.scheme)), std::to_string(n), std::to_string(n + 1),
                         std::to_string(m), format_double(a), format_double(it->second),
                         format_double(it->second - a)});
  }
}

nlohmann::json summary_json(const SchemeResult& result) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : result.cells) {
    const auto& self = result.train_scores.at(c.train_period);
    cells.push_back({{"train_period", c.train_period},
                     {"test_period", c.test_period},
                     {"auc", c.auc},
                     {"brier", c.brier},
                     {"delta_auc", c.auc - self.auc},
                     {"delta_brier", c.brier - self.brier},
                     {"n_train", c.n_train},
                     {"n_test", c.n_test},
                     {"converged", c.converged}});
  }
  nlohmann::json train = nlohmann::json::array();
  for (const auto& [n, s] : result.train_scores) {
    train.push_back({{"period", n}, {"auc", s.auc}, {"brier", s.brier}, {"n_train", s.n_train}, {"converged", s.converged}});
  }
  return {{"scheme", to_string(result.scheme)},
          {"period_count", result.period_count},
          {"cells", cells},
          {"train", train},
          {"warnings", result.warnings}};
}

}  // namespace jitlab::eval
