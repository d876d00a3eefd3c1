#include "jitlab/curation/rule_catalog.hpp"

#include "jitlab/core/error.hpp"

namespace jitlab::curation {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kIntrinsic: return "intrinsic";
    case Verdict::kExtrinsic: return "extrinsic";
    case Verdict::kMislabeled: return "mislabeled";
  }
  return "?";
}

std::string_view to_string(RuleSection s) {
  switch (s) {
    case RuleSection::kMislabeled: return "mislabeled";
    case RuleSection::kBug: return "bug";
    case RuleSection::kExtrinsic: return "extrinsic";
    case RuleSection::kIntrinsic: return "intrinsic";
  }
  return "?";
}

Verdict verdict_from_string(std::string_view text) {
  if (text == "intrinsic") return Verdict::kIntrinsic;
  if (text == "extrinsic") return Verdict::kExtrinsic;
  if (text == "mislabeled") return Verdict::kMislabeled;
  throw DataError("unknown verdict '" + std::string(text) + "'");
}

RuleSection section_from_string(std::string_view text) {
  if (text == "mislabeled") return RuleSection::kMislabeled;
  if (text == "bug") return RuleSection::kBug;
  if (text == "extrinsic") return RuleSection::kExtrinsic;
  if (text == "intrinsic") return RuleSection::kIntrinsic;
  throw DataError("unknown rule section '" + std::string(text) + "'");
}

const RuleCatalog& RuleCatalog::standard() {
  static const RuleCatalog catalog({
      {"M1", RuleSection::kMislabeled,
       "It reports a bug in test files. We assume that these bugs are caused by how developers understand and "
       "test the code. Thus, there is no change introducing buggy code to source code of the project."},
      {"M2", RuleSection::kMislabeled,
       "It reports a clean up in the source code that does not interfere with the performance of the software."},
      {"M3", RuleSection::kMislabeled, "It reports a misspelling or typo in the inline comments."},
      {"M4", RuleSection::kMislabeled, "It reports a change in the source code to prevent future bugs."},
      {"M5", RuleSection::kMislabeled, "The report has discordance in the comments between developers."},
      {"M6", RuleSection::kMislabeled, "The report does not have a BFC."},
      {"B1", RuleSection::kBug, "It reports a misspelling or typo in the source code."},
      {"B2", RuleSection::kBug, "It reports that a previous change to the source code caused the bug."},
      {"B3", RuleSection::kBug,
       "It reports a buggy functionality implemented that should be known at the time of coding."},
      {"B4", RuleSection::kBug,
       "It reports an omission in the original code that should be considered at the time of coding."},
      {"E1", RuleSection::kExtrinsic,
       "It reports a bug caused by a change in the environment where the software is used."},
      {"E2", RuleSection::kExtrinsic, "It reports a bug because requirements have changed."},
      {"E3", RuleSection::kExtrinsic, "It reports a bug caused by an external change to the VCS of the project."},
      {"E4", RuleSection::kExtrinsic, "It reports a bug in an external library used by the project."},
      {"I1", RuleSection::kIntrinsic, "There is no evidence to be classified as an extrinsic bug."},
  });
  return catalog;
}

const Rule* RuleCatalog::find(std::string_view id) const {
  for (const auto& r : rules_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::string_view RuleCatalog::heading(RuleSection s) {
  switch (s) {
    case RuleSection::kMislabeled: return "An issue is classified as not a bug report (Mislabeled) if ...";
    case RuleSection::kBug: return "An issue is classified as bug report if ...";
    case RuleSection::kExtrinsic: return "A bug report is classified as extrinsic if ...";
    case RuleSection::kIntrinsic: return "A bug report is classified as intrinsic if ...";
  }
  return "";
}

void RuleCatalog::check(Verdict verdict, std::string_view rule_id) const {
  const Rule* rule = find(rule_id);
  if (!rule) throw DataError("unknown rule '" + std::string(rule_id) + "'");
  bool ok = false;
  switch (verdict) {
    case Verdict::kMislabeled: ok = rule->section == RuleSection::kMislabeled; break;
    case Verdict::kExtrinsic: ok = rule->section == RuleSection::kExtrinsic; break;
    case Verdict::kIntrinsic:
      ok = rule->section == RuleSection::kIntrinsic || rule->section == RuleSection::kBug;
      break;
  }
  if (!ok) {
    throw DataError("rule " + rule->id + " belongs to the " + std::string(to_string(rule->section)) +
                    " section and cannot justify verdict " + std::string(to_string(verdict)));
  }
}

}  // namespace jitlab::curation
