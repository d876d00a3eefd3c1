#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "jitlab/metrics/change_metrics.hpp"

namespace jitlab::model {

enum class Family { kSize, kDiffusion, kHistory, kAuthorExperience, kReviewerExperience, kReview };

inline constexpr std::array<Family, 6> kFamilies = {Family::kSize,           Family::kDiffusion,
                                                    Family::kHistory,        Family::kAuthorExperience,
                                                    Family::kReviewerExperience, Family::kReview};

std::string_view to_string(Family f);
Family family_from_string(std::string_view text);

// Throws UsageError for a name outside the taxonomy.
Family family_of(std::string_view property);

// Taxonomy order; the default candidate set for a model.
std::vector<std::string> all_properties();

// Named numeric columns over a set of rows, one vector per property.
struct PropertyData {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  const std::vector<double>& column(std::string_view name) const;
  PropertyData select(const std::vector<std::string>& keep) const;
};

PropertyData property_data(const std::vector<metrics::ChangeMetrics>& rows, const std::vector<std::string>& names);

}  // namespace jitlab::model
