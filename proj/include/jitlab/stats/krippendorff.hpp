#pragma once

#include <optional>
#include <string>
#include <vector>

namespace jitlab::stats {

// Nominal Krippendorff alpha via the coincidence matrix. Each unit lists
// the values it received (missing ratings simply absent); units with fewer
// than 2 values are not pairable and are ignored. Throws DataError when no
// unit is pairable. When every pairable value falls in one category the
// expected disagreement is 0 and alpha is reported as 1.
double krippendorff_alpha_nominal(const std::vector<std::vector<std::string>>& units);

// rater x item matrix with std::nullopt for a missing rating.
double krippendorff_alpha_nominal(const std::vector<std::vector<std::optional<std::string>>>& ratings);

}  // namespace jitlab::stats
