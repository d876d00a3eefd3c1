#pragma once

#include <string>
#include <vector>

#include "jitlab/model/properties.hpp"

namespace jitlab::model {

struct CollinearityResult {
  std::vector<std::string> retained;
  struct Drop {
    std::string property;
    std::string kept_partner;
    double rho = 0.0;
  };
  std::vector<Drop> dropped;
  std::vector<std::string> constant;  // dropped before any correlation
};

// Greedy scan in column order: a property is kept unless its Spearman |rho|
// with an already kept property exceeds `threshold`.
CollinearityResult collinearity_filter(const PropertyData& data, double threshold = 0.7);

enum class RedundancyTransform { kRank, kRaw };

struct RedundancyResult {
  std::vector<std::string> retained;
  struct Drop {
    std::string property;
    double r2 = 0.0;
  };
  std::vector<Drop> dropped;  // in drop order
};

// Repeatedly regresses every remaining property on the others (OLS with an
// intercept, on mid-ranks by default) and drops the one with the largest
// R^2 >= threshold; among equal R^2 the later-listed property goes. Throws
// DataError when there are fewer observations than properties.
RedundancyResult redundancy_filter(const PropertyData& data, double r2_threshold = 0.9,
                                   RedundancyTransform transform = RedundancyTransform::kRank);

// R^2 of regressing column `target` on every other column (intercept
// included).
double r_squared(const std::vector<std::vector<double>>& columns, std::size_t target);

}  // namespace jitlab::model
