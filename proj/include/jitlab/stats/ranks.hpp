#pragma once

#include <span>
#include <vector>

namespace jitlab::stats {

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> mid_ranks(std::span<const double> values);

// Sum over tie groups of (t^3 - t).
double tie_term(std::span<const double> values);

double pearson(std::span<const double> x, std::span<const double> y);

// Pearson correlation of mid-ranks. Throws DataError on length mismatch,
// fewer than 2 values, or a constant input.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace jitlab::stats
