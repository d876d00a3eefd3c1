#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jitlab/metrics/change_metrics.hpp"
#include "jitlab/model/logistic.hpp"

namespace jitlab::eval {

enum class Scheme { kShort, kLong };

std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view text);

struct PeriodEval {
  int train_period = 0;
  int test_period = 0;
  Scheme scheme = Scheme::kShort;
  double auc = 0.0;
  double brier = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  bool converged = false;
};

// In-sample scores of one training period's model, the reference for the
// delta grids.
struct TrainScore {
  double auc = 0.0;
  double brier = 0.0;
  std::size_t n_train = 0;
  bool converged = false;
};

struct SchemeResult {
  Scheme scheme = Scheme::kShort;
  int period_count = 0;
  std::vector<PeriodEval> cells;  // ordered by (train, test)
  std::map<int, model::FittedModel> models;
  std::map<int, TrainScore> train_scores;
  std::vector<std::string> warnings;
};

// Rows of period n (short) or periods 1..n (long), in input order.
std::vector<metrics::ChangeMetrics> training_rows(const std::vector<metrics::ChangeMetrics>& rows, Scheme scheme,
                                                  int period);
std::vector<metrics::ChangeMetrics> period_rows(const std::vector<metrics::ChangeMetrics>& rows, int period);

struct SchemeModels {
  Scheme scheme = Scheme::kShort;
  int period_count = 0;
  std::map<int, model::FittedModel> models;  // by train period
  std::vector<std::string> warnings;
};

// Fits one model per train period n < period_count on up to `jobs` threads.
// Training sets that cannot be fitted are skipped with a warning. The
// result does not depend on `jobs`.
SchemeModels fit_scheme(const std::vector<metrics::ChangeMetrics>& rows, int period_count, Scheme scheme,
                        const model::ModelOptions& options = {}, unsigned jobs = 1);

// Scores every model on its own training set and on every later period.
// Test periods with a single class are skipped with a warning.
SchemeResult evaluate_scheme(const std::vector<metrics::ChangeMetrics>& rows, SchemeModels models);

SchemeResult run_scheme(const std::vector<metrics::ChangeMetrics>& rows, int period_count, Scheme scheme,
                        const model::ModelOptions& options = {}, unsigned jobs = 1);

}  // namespace jitlab::eval
