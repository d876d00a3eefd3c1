#include "jitlab/eval/scores.hpp"

#include <cmath>

#include "jitlab/core/error.hpp"
#include "jitlab/stats/ranks.hpp"

namespace jitlab::eval {

double auc(std::span<const double> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) throw DataError("scores and labels differ in length");
  const auto ranks = stats::mid_ranks(scores);
  double rank_sum = 0.0;
  double pos = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (std::isnan(scores[i])) throw DataError("score is NaN");
    if (labels[i]) {
      rank_sum += ranks[i];
      pos += 1.0;
    }
  }
  const double neg = static_cast<double>(labels.size()) - pos;
  if (pos == 0.0 || neg == 0.0) throw DataError("AUC needs at least one positive and one negative");
  return (rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

double brier(std::span<const double> probs, const std::vector<bool>& labels) {
  if (probs.size() != labels.size()) throw DataError("probabilities and labels differ in length");
  if (probs.empty()) throw DataError("Brier score of an empty sample");
  double s = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!(p >= 0.0 && p <= 1.0)) throw DataError("probability outside [0, 1]");
    const double d = p - (labels[i] ? 1.0 : 0.0);
    s += d * d;
  }
  return s / static_cast<double>(probs.size());
}

}  // namespace jitlab::eval
