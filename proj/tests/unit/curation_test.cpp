#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "fixture.hpp"
#include "jitlab/core/csv.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/curation/filters.hpp"
#include "jitlab/curation/label_store.hpp"
#include "jitlab/curation/periods.hpp"
#include "jitlab/curation/rule_catalog.hpp"

using namespace jitlab;
using namespace jitlab::curation;
using jitlab::test::at;

namespace {

LabelStore::Clock fixed_clock() {
  return [] { return at("2022-05-01T12:00:00Z"); };
}

std::set<std::string> corpus(int n) {
  std::set<std::string> out;
  for (int i = 1; i <= n; ++i) out.insert(std::to_string(i));
  return out;
}

// The (A,A),(A,A),(B,B),(A,B) fixture with A = intrinsic, B = mislabeled.
void label_hand_fixture(LabelStore& store) {
  const Verdict r1[] = {Verdict::kIntrinsic, Verdict::kIntrinsic, Verdict::kMislabeled, Verdict::kIntrinsic};
  const Verdict r2[] = {Verdict::kIntrinsic, Verdict::kIntrinsic, Verdict::kMislabeled, Verdict::kMislabeled};
  for (int i = 0; i < 4; ++i) {
    const auto id = std::to_string(i + 1);
    store.record_label(id, "r1", r1[i], r1[i] == Verdict::kIntrinsic ? "I1" : "M1", "");
    store.record_label(id, "r2", r2[i], r2[i] == Verdict::kIntrinsic ? "I1" : "M1", "");
  }
}

std::vector<std::size_t> bic_counts(const FilteredDataset& d) {
  std::vector<std::size_t> out;
  for (const auto& s : d.stages) out.push_back(s.bics);
  return out;
}

}  // namespace

TEST(RuleCatalog, SectionsAndIds) {
  const auto& c = RuleCatalog::standard();
  std::map<RuleSection, int> counts;
  for (const auto& r : c.rules()) {
    ++counts[r.section];
    EXPECT_FALSE(r.text.empty());
  }
  EXPECT_EQ(counts[RuleSection::kMislabeled], 6);
  EXPECT_EQ(counts[RuleSection::kBug], 4);
  EXPECT_EQ(counts[RuleSection::kExtrinsic], 4);
  EXPECT_EQ(counts[RuleSection::kIntrinsic], 1);
  EXPECT_EQ(c.find("I1")->section, RuleSection::kIntrinsic);
  EXPECT_EQ(c.find("Z9"), nullptr);
}

TEST(RuleCatalog, VerdictMustMatchSection) {
  const auto& c = RuleCatalog::standard();
  EXPECT_NO_THROW(c.check(Verdict::kExtrinsic, "E1"));
  EXPECT_NO_THROW(c.check(Verdict::kIntrinsic, "I1"));
  EXPECT_NO_THROW(c.check(Verdict::kIntrinsic, "B2"));
  EXPECT_NO_THROW(c.check(Verdict::kMislabeled, "M3"));
  EXPECT_THROW(c.check(Verdict::kIntrinsic, "M1"), DataError);
  EXPECT_THROW(c.check(Verdict::kExtrinsic, "I1"), DataError);
  EXPECT_THROW(c.check(Verdict::kMislabeled, "B1"), DataError);
  EXPECT_THROW(c.check(Verdict::kMislabeled, "X1"), DataError);
}

TEST(LabelStore, RecordsAndValidates) {
  LabelStore store(corpus(3), std::nullopt, fixed_clock());
  const auto r = store.record_label("1", "ann", Verdict::kExtrinsic, "E1", "external API change");
  EXPECT_EQ(r.revision, 1);
  EXPECT_EQ(r.labeled_time, at("2022-05-01T12:00:00Z"));
  EXPECT_THROW(store.record_label("1", "ann", Verdict::kIntrinsic, "M1", ""), DataError);
  EXPECT_THROW(store.record_label("99", "ann", Verdict::kIntrinsic, "I1", ""), DataError);
  store.record_label("1", "bob", Verdict::kExtrinsic, "E2", "");
  EXPECT_EQ(store.labels_for("1").size(), 2u);
}

TEST(LabelStore, OverwriteKeepsAuditTrailAndChecksRevision) {
  LabelStore store(corpus(1), std::nullopt, fixed_clock());
  store.record_label("1", "ann", Verdict::kIntrinsic, "I1", "first");
  EXPECT_THROW(store.record_label("1", "ann", Verdict::kExtrinsic, "E1", "", 0), ConflictError);
  EXPECT_THROW(store.record_label("1", "ann", Verdict::kExtrinsic, "E1", "", 2), ConflictError);
  const auto second = store.record_label("1", "ann", Verdict::kExtrinsic, "E1", "second", 1);
  EXPECT_EQ(second.revision, 2);
  EXPECT_EQ(store.labels().size(), 1u);
  EXPECT_EQ(store.label("1", "ann")->verdict, Verdict::kExtrinsic);
  EXPECT_EQ(store.audit_log().size(), 2u);
}

TEST(LabelStore, ReplaysEventLog) {
  jitlab::test::TempDir dir("jitlab-labels");
  const auto log = dir / "events.jsonl";
  {
    LabelStore store(corpus(4), log, fixed_clock());
    label_hand_fixture(store);
    store.resolve("4", Verdict::kMislabeled, "M2", "meeting", "lead");
  }
  LabelStore again(corpus(4), log, fixed_clock());
  EXPECT_EQ(again.labels().size(), 8u);
  EXPECT_EQ(again.audit_log().size(), 9u);
  EXPECT_TRUE(again.disagreements().empty());
  EXPECT_EQ(again.consensus().at("4"), Verdict::kMislabeled);
}

TEST(LabelStore, AgreementHandFixture) {
  LabelStore store(corpus(4), std::nullopt, fixed_clock());
  label_hand_fixture(store);
  const auto report = store.agreement_report();
  EXPECT_NEAR(*report.alpha_bug_vs_not, 1.0 - 0.25 / (30.0 / 56.0), 1e-9);
  EXPECT_EQ(report.disagreements, (std::vector<std::string>{"4"}));
  EXPECT_DOUBLE_EQ(report.coverage, 1.0);
  EXPECT_EQ(report.both_bug, 2u);
  EXPECT_THROW(store.consensus(), DataError);
}

TEST(LabelStore, PerfectAgreementAndNoOverlap) {
  LabelStore store(corpus(10), std::nullopt, fixed_clock());
  for (int i = 1; i <= 10; ++i) {
    const auto v = i % 3 == 0 ? Verdict::kExtrinsic : Verdict::kIntrinsic;
    for (const char* rater : {"a", "b"}) store.record_label(std::to_string(i), rater, v, v == Verdict::kExtrinsic ? "E3" : "I1", "");
  }
  const auto report = store.agreement_report();
  EXPECT_DOUBLE_EQ(*report.alpha_bug_vs_not, 1.0);
  EXPECT_DOUBLE_EQ(*report.alpha_intrinsic_vs_extrinsic, 1.0);

  LabelStore lonely(corpus(2), std::nullopt, fixed_clock());
  lonely.record_label("1", "a", Verdict::kIntrinsic, "I1", "");
  lonely.record_label("2", "b", Verdict::kIntrinsic, "I1", "");
  EXPECT_THROW(lonely.agreement_report(), DataError);
}

TEST(LabelStore, ConcurrentWritersAllLand) {
  LabelStore store(corpus(50), std::nullopt, fixed_clock());
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&store, t] {
      for (int i = 1; i <= 50; ++i) store.record_label(std::to_string(i), "rater" + std::to_string(t), Verdict::kIntrinsic, "I1", "");
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(store.labels().size(), 200u);
  EXPECT_EQ(store.audit_log().size(), 200u);
}

TEST(LabelStore, ExportImportRoundTrip) {
  jitlab::test::TempDir dir("jitlab-labels");
  LabelStore store(corpus(4), std::nullopt, fixed_clock());
  label_hand_fixture(store);
  write_labels(dir / "labels.jsonl", store.labels());
  LabelStore copy(corpus(4), std::nullopt, fixed_clock());
  copy.import_labels(read_labels(dir / "labels.jsonl"));
  EXPECT_EQ(copy.labels().size(), 8u);
  EXPECT_EQ(*copy.agreement_report().alpha_bug_vs_not, *store.agreement_report().alpha_bug_vs_not);
}

TEST(Periods, SevenMonthsGiveTwoThreeMonthPeriods) {
  std::vector<Timestamp> times;
  for (int m = 0; m <= 7; ++m) times.push_back(add_months(at("2020-01-01"), m));
  const auto p = stratify_periods(times, 3);
  EXPECT_EQ(p.count, 2);
  EXPECT_EQ(p.assignment.front(), 1);
  EXPECT_EQ(p.assignment[3], 2);
  EXPECT_FALSE(p.assignment[6].has_value());
  EXPECT_FALSE(p.assignment.back().has_value());
}

TEST(Periods, SingleWindow) {
  EXPECT_EQ(stratify_periods(std::vector<Timestamp>{at("2020-01-01"), at("2020-03-15")}, 3).count, 0);
  EXPECT_EQ(stratify_periods(std::vector<Timestamp>{at("2020-01-01"), at("2020-04-01")}, 3).count, 1);
  EXPECT_THROW(stratify_periods(std::vector<Timestamp>{at("2020-01-01")}, 4), UsageError);
}

TEST(Periods, SixMonthsHalveThreeMonths) {
  for (int span : {7, 12, 19, 24, 31}) {
    std::vector<Timestamp> times;
    for (int d = 0; d <= span * 30; d += 5) times.push_back(at("2019-05-17") + std::chrono::hours{24 * d});
    const int three = stratify_periods(times, 3).count;
    const int six = stratify_periods(times, 6).count;
    EXPECT_LE(std::abs(three - 2 * six), 1) << span;
  }
}

TEST(Periods, DisjointContiguousAndTotal) {
  std::vector<Timestamp> times;
  for (int d = 0; d < 400; d += 3) times.push_back(at("2021-02-28") + std::chrono::hours{24 * d});
  const auto p = stratify_periods(times, 3);
  for (int k = 1; k < p.count; ++k) EXPECT_EQ(p.window_end(k), p.window_start(k + 1));
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!p.assignment[i]) {
      EXPECT_GE(times[i], p.window_end(p.count));
      continue;
    }
    EXPECT_GE(times[i], p.window_start(*p.assignment[i]));
    EXPECT_LT(times[i], p.window_end(*p.assignment[i]));
  }
}

TEST(Filters, HandCountedLedger) {
  const auto f = jitlab::test::filter_corpus();
  const auto d = apply_filters(f.rows, f.linkages, f.verdicts);
  ASSERT_EQ(d.stages.size(), 6u);
  EXPECT_EQ(d.stages[0].issues, 7u);
  EXPECT_EQ(d.stages[1].issues, 6u);
  for (std::size_t i = 2; i < 6; ++i) EXPECT_EQ(d.stages[i].issues, 6u);
  EXPECT_EQ(bic_counts(d), (std::vector<std::size_t>{9, 8, 7, 6, 5, 4}));
  EXPECT_EQ(d.period_count, 2);
  EXPECT_EQ(d.rows.size(), 7u);
  EXPECT_EQ(d.unlabeled_issues, (std::vector<std::string>{"I7"}));
  for (const auto& r : d.rows) {
    const bool bic = r.change_id == "r1" || r.change_id == "r2" || r.change_id == "r4" || r.change_id == "r10";
    EXPECT_EQ(r.is_bic, bic) << r.change_id;
  }
}

TEST(Filters, GroundTruthModeDropsMislabeled) {
  const auto f = jitlab::test::filter_corpus();
  FilterOptions options;
  options.drop_mislabeled = true;
  const auto d = apply_filters(f.rows, f.linkages, f.verdicts, options);
  EXPECT_EQ(d.stages[1].issues, 5u);
  EXPECT_EQ(d.stages[1].name, "Extrinsic and Mislabeled Bugs");
  EXPECT_EQ(bic_counts(d), (std::vector<std::size_t>{9, 7, 6, 5, 4, 3}));
}

TEST(Filters, ChurnBoundaryAndMonotoneCounts) {
  auto f = jitlab::test::filter_corpus();
  const auto d = apply_filters(f.rows, f.linkages, f.verdicts);
  bool kept_9999 = false;
  for (const auto& r : d.rows) kept_9999 |= r.change_id == "r10";
  EXPECT_TRUE(kept_9999);
  for (std::size_t i = 1; i < d.stages.size(); ++i) {
    EXPECT_LE(d.stages[i].issues, d.stages[i - 1].issues);
    EXPECT_LE(d.stages[i].bics, d.stages[i - 1].bics);
  }
}

TEST(Filters, LedgerCsvColumns) {
  const auto f = jitlab::test::filter_corpus();
  std::ostringstream out;
  write_filter_ledger(out, apply_filters(f.rows, f.linkages, f.verdicts).stages);
  const auto rows = csv::parse(out.str());
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], (csv::Row{"#", "Filter", "Issues", "BICs"}));
  EXPECT_EQ(rows[1], (csv::Row{"F0", "Issue-VCS dataset", "7", "9"}));
  EXPECT_EQ(rows[3], (csv::Row{"F2", "Too much Churn", "6", "7"}));
}
