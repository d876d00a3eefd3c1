#include "jitlab/eval/schemes.hpp"

#include <spdlog/spdlog.h>

#include "jitlab/core/error.hpp"
#include "jitlab/core/parallel.hpp"
#include "jitlab/eval/scores.hpp"

namespace jitlab::eval {

std::string_view to_string(Scheme s) { return s == Scheme::kShort ? "short" : "long"; }

Scheme scheme_from_string(std::string_view text) {
  if (text == "short") return Scheme::kShort;
  if (text == "long") return Scheme::kLong;
  throw UsageError("scheme must be short or long, not '" + std::string(text) + "'");
}

std::vector<metrics::ChangeMetrics> training_rows(const std::vector<metrics::ChangeMetrics>& rows, Scheme scheme,
                                                  int period) {
  std::vector<metrics::ChangeMetrics> out;
  for (const auto& r : rows) {
    if (!r.period) continue;
    if (scheme == Scheme::kShort ? *r.period == period : *r.period <= period) out.push_back(r);
  }
  return out;
}

std::vector<metrics::ChangeMetrics> period_rows(const std::vector<metrics::ChangeMetrics>& rows, int period) {
  return training_rows(rows, Scheme::kShort, period);
}

SchemeModels fit_scheme(const std::vector<metrics::ChangeMetrics>& rows, int period_count, Scheme scheme,
                        const model::ModelOptions& options, unsigned jobs) {
  SchemeModels out;
  out.scheme = scheme;
  out.period_count = period_count;
  if (period_count < 2) {
    out.warnings.push_back("fewer than 2 periods; nothing to evaluate");
    spdlog::warn("{} scheme: {}", to_string(scheme), out.warnings.back());
    return out;
  }
  const auto trains = static_cast<std::size_t>(period_count - 1);
  std::vector<std::optional<model::FittedModel>> fitted(trains);
  std::vector<std::string> failures(trains);
  parallel_for(trains, jobs, [&](std::size_t i) {
    const int n = static_cast<int>(i) + 1;
    try {
      fitted[i] = model::train_model(training_rows(rows, scheme, n), options);
    } catch (const DataError& e) {
      failures[i] = "train period " + std::to_string(n) + " skipped: " + e.what();
    }
  });
  for (std::size_t i = 0; i < trains; ++i) {
    if (fitted[i]) {
      out.models.emplace(static_cast<int>(i) + 1, std::move(*fitted[i]));
    } else {
      out.warnings.push_back(failures[i]);
      spdlog::warn("{} scheme: {}", to_string(scheme), failures[i]);
    }
  }
  return out;
}

SchemeResult evaluate_scheme(const std::vector<metrics::ChangeMetrics>& rows, SchemeModels models) {
  SchemeResult result;
  result.scheme = models.scheme;
  result.period_count = models.period_count;
  result.warnings = models.warnings;
  for (auto& [n, m] : models.models) {
    const auto train = training_rows(rows, models.scheme, n);
    const auto train_y = model::outcomes(train);
    const auto train_probs = model::predict(m, train);
    result.train_scores[n] = {auc(train_probs, train_y), brier(train_probs, train_y), train.size(), m.fit.converged};
    for (int t = n + 1; t <= models.period_count; ++t) {
      const auto test = period_rows(rows, t);
      const auto y = model::outcomes(test);
      try {
        const auto probs = model::predict(m, test);
        result.cells.push_back({n, t, models.scheme, auc(probs, y), brier(probs, y), train.size(), test.size(),
                                m.fit.converged});
      } catch (const DataError& e) {
        result.warnings.push_back("cell (" + std::to_string(n) + ", " + std::to_string(t) + ") skipped: " + e.what());
        spdlog::warn("{} scheme: {}", to_string(models.scheme), result.warnings.back());
      }
    }
  }
  result.models = std::move(models.models);
  return result;
}

SchemeResult run_scheme(const std::vector<metrics::ChangeMetrics>& rows, int period_count, Scheme scheme,
                        const model::ModelOptions& options, unsigned jobs) {
  return evaluate_scheme(rows, fit_scheme(rows, period_count, scheme, options, jobs));
}

}  // namespace jitlab::eval
