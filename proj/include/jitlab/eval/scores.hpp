#pragma once

#include <span>
#include <vector>

namespace jitlab::eval {

// Probability that a random positive outscores a random negative, ties
// counting one half. Throws DataError unless both classes are present.
double auc(std::span<const double> scores, const std::vector<bool>& labels);

// Mean squared difference between probability and outcome. Throws
// DataError for a probability outside [0, 1].
double brier(std::span<const double> probs, const std::vector<bool>& labels);

}  // namespace jitlab::eval
