#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jitlab::curation {

enum class Verdict { kIntrinsic, kExtrinsic, kMislabeled };
enum class RuleSection { kMislabeled, kBug, kExtrinsic, kIntrinsic };

std::string_view to_string(Verdict v);
std::string_view to_string(RuleSection s);
// Throws DataError for anything else.
Verdict verdict_from_string(std::string_view text);
RuleSection section_from_string(std::string_view text);

inline bool is_bug(Verdict v) { return v != Verdict::kMislabeled; }

struct Rule {
  std::string id;
  RuleSection section;
  std::string text;
};

// The two-step classification protocol: bug report vs not a bug (M*, B*),
// then extrinsic vs intrinsic (E*, I1).
class RuleCatalog {
 public:
  static const RuleCatalog& standard();

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule* find(std::string_view id) const;

  // Headline sentences for each section ("An issue is classified as ...").
  static std::string_view heading(RuleSection s);

  // Whether `rule_id` may justify `verdict`: mislabeled needs a not-a-bug
  // rule, extrinsic an extrinsic rule, intrinsic either the default rule or
  // a bug-report rule. Throws DataError naming the problem otherwise.
  void check(Verdict verdict, std::string_view rule_id) const;

 private:
  explicit RuleCatalog(std::vector<Rule> rules) : rules_(std::move(rules)) {}
  std::vector<Rule> rules_;
};

}  // namespace jitlab::curation
