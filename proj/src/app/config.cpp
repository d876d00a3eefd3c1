#include "jitlab/app/config.hpp"

#include <fstream>

#include "jitlab/core/error.hpp"
#include "jitlab/core/numfmt.hpp"

namespace jitlab::app {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto item = trim(std::string_view(value).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  try {
    if constexpr (std::is_floating_point_v<T>) {
      return static_cast<T>(parse_double(value));
    } else {
      return static_cast<T>(parse_integer(value));
    }
  } catch (const DataError&) {
    throw UsageError("setting '" + key + "' expects a number, got '" + value + "'");
  }
}

bool parse_flag(const std::string& key, const std::string& value) {
  try {
    return parse_bool(value);
  } catch (const DataError&) {
    throw UsageError("setting '" + key + "' expects a boolean, got '" + value + "'");
  }
}

}  // namespace

void apply_setting(PipelineConfig& c, const std::string& key, const std::string& value) {
  if (key == "repo") {
    c.repo = value;
  } else if (key == "branch") {
    c.branch = value;
  } else if (key == "issues") {
    c.issues = value;
  } else if (key == "reviews") {
    c.reviews = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
  } else if (key == "labels") {
    c.labels = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
  } else if (key == "suspicious") {
    c.suspicious = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
  } else if (key == "pattern") {
    c.patterns.push_back(value);
  } else if (key == "output") {
    c.output = value;
  } else if (key == "merge_mode") {
    if (value == "first-parent") {
      c.merge_mode = vcs::MergeDiffMode::kFirstParent;
    } else if (value == "skip") {
      c.merge_mode = vcs::MergeDiffMode::kSkip;
    } else {
      throw UsageError("merge_mode must be first-parent or skip");
    }
  } else if (key == "rename_similarity") {
    c.rename_similarity = parse_number<int>(key, value);
  } else if (key == "cosmetic_filter") {
    c.cosmetic_filter = parse_flag(key, value);
  } else if (key == "date_filter") {
    c.date_filter = parse_flag(key, value);
  } else if (key == "date_basis") {
    if (value == "author") {
      c.date_basis = szz::DateBasis::kAuthorTime;
    } else if (value == "commit") {
      c.date_basis = szz::DateBasis::kCommitTime;
    } else {
      throw UsageError("date_basis must be author or commit");
    }
  } else if (key == "days_per_year") {
    c.days_per_year = parse_number<double>(key, value);
  } else if (key == "age_aggregation") {
    if (value == "mean") {
      c.age_aggregation = metrics::AgeAggregation::kMean;
    } else if (value == "max") {
      c.age_aggregation = metrics::AgeAggregation::kMax;
    } else {
      throw UsageError("age_aggregation must be mean or max");
    }
  } else if (key == "reviewer_aggregation") {
    if (value == "mean") {
      c.reviewer_aggregation = metrics::ReviewerAggregation::kMean;
    } else if (value == "sum") {
      c.reviewer_aggregation = metrics::ReviewerAggregation::kSum;
    } else {
      throw UsageError("reviewer_aggregation must be mean or sum");
    }
  } else if (key == "churn_threshold") {
    c.churn_threshold = parse_number<long long>(key, value);
  } else if (key == "files_threshold") {
    c.files_threshold = parse_number<long long>(key, value);
  } else if (key == "drop_mislabeled") {
    c.drop_mislabeled = parse_flag(key, value);
  } else if (key == "months") {
    std::vector<int> months;
    for (const auto& m : split_list(value)) months.push_back(parse_number<int>(key, m));
    c.months = std::move(months);
  } else if (key == "rho_threshold") {
    c.rho_threshold = parse_number<double>(key, value);
  } else if (key == "r2_threshold") {
    c.r2_threshold = parse_number<double>(key, value);
  } else if (key == "redundancy_transform") {
    if (value == "rank") {
      c.redundancy_transform = model::RedundancyTransform::kRank;
    } else if (value == "raw") {
      c.redundancy_transform = model::RedundancyTransform::kRaw;
    } else {
      throw UsageError("redundancy_transform must be rank or raw");
    }
  } else if (key == "spline_df") {
    c.spline_df = parse_number<int>(key, value);
  } else if (key == "scheme") {
    std::vector<eval::Scheme> schemes;
    for (const auto& s : split_list(value)) {
      if (s == "both") {
        schemes = {eval::Scheme::kShort, eval::Scheme::kLong};
      } else {
        schemes.push_back(eval::scheme_from_string(s));
      }
    }
    c.schemes = std::move(schemes);
  } else if (key == "normalization") {
    if (value == "family-sum") {
      c.normalization = eval::Normalization::kFamilySum;
    } else if (value == "joint") {
      c.normalization = eval::Normalization::kJointTotal;
    } else {
      throw UsageError("normalization must be family-sum or joint");
    }
  } else if (key == "wilcoxon_exact_max") {
    c.wilcoxon_exact_max = parse_number<std::size_t>(key, value);
  } else if (key == "jobs") {
    c.jobs = parse_number<unsigned>(key, value);
  } else {
    throw UsageError("unknown setting '" + key + "'");
  }
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path.string());
  PipelineConfig c;
  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // '#' inside a pattern value is common ("Closes-Bug: #(\d+)"), so only a
    // leading '#' starts a comment.
    const auto stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(std::string_view(stripped).substr(0, eq));
    const auto value = trim(std::string_view(stripped).substr(eq + 1));
    apply_setting(c, key, value);
  }
  auto resolve = [&](std::filesystem::path& p) {
    if (!p.empty() && p.is_relative()) p = base / p;
  };
  resolve(c.repo);
  resolve(c.issues);
  resolve(c.output);
  for (auto* opt : {&c.reviews, &c.labels, &c.suspicious}) {
    if (*opt) resolve(**opt);
  }
  return c;
}

void validate(const PipelineConfig& c) {
  if (c.churn_threshold <= 0 || c.files_threshold <= 0) throw UsageError("filter thresholds must be positive");
  if (!(c.rho_threshold > 0.0 && c.rho_threshold <= 1.0)) throw UsageError("rho_threshold must be in (0, 1]");
  if (!(c.r2_threshold > 0.0 && c.r2_threshold <= 1.0)) throw UsageError("r2_threshold must be in (0, 1]");
  if (c.spline_df < 1 || c.spline_df > 6) throw UsageError("spline_df must be between 1 and 6");
  if (!(c.days_per_year > 0.0)) throw UsageError("days_per_year must be positive");
  if (c.months.empty()) throw UsageError("months must list 3 and/or 6");
  for (int m : c.months) {
    if (m != 3 && m != 6) throw UsageError("months must be 3 or 6, not " + std::to_string(m));
  }
  if (c.schemes.empty()) throw UsageError("scheme must be short, long or both");
  if (c.rename_similarity < 0 || c.rename_similarity > 100) throw UsageError("rename_similarity must be 0..100");
  if (c.jobs == 0) throw UsageError("jobs must be positive");
}

std::map<std::string, std::string> snapshot(const PipelineConfig& c) {
  std::map<std::string, std::string> s;
  auto opt = [](const std::optional<std::filesystem::path>& p) { return p ? p->string() : std::string(); };
  auto join = [](const auto& items, auto&& fn) {
    std::string out;
    for (const auto& i : items) out += (out.empty() ? "" : ",") + fn(i);
    return out;
  };
  s["repo"] = c.repo.string();
  s["branch"] = c.branch;
  s["issues"] = c.issues.string();
  s["reviews"] = opt(c.reviews);
  s["labels"] = opt(c.labels);
  s["suspicious"] = opt(c.suspicious);
  s["pattern"] = join(c.patterns, [](const std::string& p) { return p; });
  s["output"] = c.output.string();
  s["merge_mode"] = c.merge_mode == vcs::MergeDiffMode::kFirstParent ? "first-parent" : "skip";
  s["rename_similarity"] = std::to_string(c.rename_similarity);
  s["cosmetic_filter"] = c.cosmetic_filter ? "true" : "false";
  s["date_filter"] = c.date_filter ? "true" : "false";
  s["date_basis"] = c.date_basis == szz::DateBasis::kAuthorTime ? "author" : "commit";
  s["days_per_year"] = format_double(c.days_per_year);
  s["age_aggregation"] = c.age_aggregation == metrics::AgeAggregation::kMean ? "mean" : "max";
  s["reviewer_aggregation"] = c.reviewer_aggregation == metrics::ReviewerAggregation::kMean ? "mean" : "sum";
  s["churn_threshold"] = std::to_string(c.churn_threshold);
  s["files_threshold"] = std::to_string(c.files_threshold);
  s["drop_mislabeled"] = c.drop_mislabeled ? "true" : "false";
  s["months"] = join(c.months, [](int m) { return std::to_string(m); });
  s["rho_threshold"] = format_double(c.rho_threshold);
  s["r2_threshold"] = format_double(c.r2_threshold);
  s["redundancy_transform"] = c.redundancy_transform == model::RedundancyTransform::kRank ? "rank" : "raw";
  s["spline_df"] = std::to_string(c.spline_df);
  s["scheme"] = join(c.schemes, [](eval::Scheme x) { return std::string(eval::to_string(x)); });
  s["normalization"] = c.normalization == eval::Normalization::kFamilySum ? "family-sum" : "joint";
  s["wilcoxon_exact_max"] = std::to_string(c.wilcoxon_exact_max);
  s["jobs"] = std::to_string(c.jobs);
  return s;
}

}  // namespace jitlab::app
