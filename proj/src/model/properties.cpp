#include "jitlab/model/properties.hpp"

#include "jitlab/core/error.hpp"
#include "jitlab/metrics/metrics_io.hpp"

namespace jitlab::model {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::kSize: return "Size";
    case Family::kDiffusion: return "Diffusion";
    case Family::kHistory: return "History";
    case Family::kAuthorExperience: return "AuthorExperience";
    case Family::kReviewerExperience: return "ReviewerExperience";
    case Family::kReview: return "Review";
  }
  return "?";
}

Family family_from_string(std::string_view text) {
  for (auto f : kFamilies) {
    if (to_string(f) == text) return f;
  }
  throw DataError("unknown family '" + std::string(text) + "'");
}

Family family_of(std::string_view p) {
  if (p == "la" || p == "ld") return Family::kSize;
  if (p == "ns" || p == "nd" || p == "nf" || p == "ent") return Family::kDiffusion;
  if (p == "nuc" || p == "ndev" || p == "age") return Family::kHistory;
  if (p == "aexp" || p == "arexp" || p == "asexp" || p == "asawr") return Family::kAuthorExperience;
  if (p == "rexp" || p == "rrexp" || p == "rsexp" || p == "rsawr") return Family::kReviewerExperience;
  if (p == "nrev" || p == "app" || p == "hcmt" || p == "rtime") return Family::kReview;
  throw UsageError("unknown change property '" + std::string(p) + "'");
}

std::vector<std::string> all_properties() {
  return {metrics::kPropertyNames.begin(), metrics::kPropertyNames.end()};
}

const std::vector<double>& PropertyData::column(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return columns[i];
  }
  throw UsageError("no column '" + std::string(name) + "'");
}

PropertyData PropertyData::select(const std::vector<std::string>& keep) const {
  PropertyData out;
  for (const auto& k : keep) {
    out.names.push_back(k);
    out.columns.push_back(column(k));
  }
  return out;
}

PropertyData property_data(const std::vector<metrics::ChangeMetrics>& rows, const std::vector<std::string>& names) {
  PropertyData out;
  for (const auto& n : names) {
    family_of(n);
    std::vector<double> col;
    col.reserve(rows.size());
    for (const auto& r : rows) col.push_back(metrics::property_value(r, n));
    out.names.push_back(n);
    out.columns.push_back(std::move(col));
  }
  return out;
}

}  // namespace jitlab::model
