#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "medcascade/calibration.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace medcascade;
using namespace medcascade::calibration;
namespace mt = medcascade::testing;

namespace {

std::vector<LabeledExample> random_examples(std::uint64_t seed, std::size_t n, int levels) {
  std::mt19937_64 gen(seed);
  std::vector<LabeledExample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = static_cast<double>(gen() % (levels + 1)) / levels;
    const int y = (gen() % 1000) < static_cast<std::uint64_t>(300 + 600 * p) ? 1 : 0;
    out.push_back({"e" + std::to_string(i), p, y});
  }
  return out;
}

std::vector<LabeledExample> fixture_validation() {
  std::ifstream in(mt::fixture("validation10.csv"));
  return load_validation(in);
}

}  // namespace

TEST(ConfusionAt, SpecExamples) {
  const std::vector<LabeledExample> one{{"a", 0.5, 1}};
  EXPECT_EQ(confusion_at(one, 0.9), (ConfusionCounts{0, 0, 1, 0}));
  const std::vector<LabeledExample> three{{"a", 0.95, 1}, {"b", 0.95, 0}, {"c", 0.1, 0}};
  EXPECT_EQ(confusion_at(three, 0.9), (ConfusionCounts{1, 1, 0, 1}));
}

TEST(ConfusionAt, TauOneNeverPredictsPositive) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ex = random_examples(seed, 200, 10);
    const auto c = confusion_at(ex, 1.0);
    EXPECT_EQ(c.tp + c.fp, 0u);
  }
}

TEST(ConfusionAt, StrictInequalityAtTableThreeScores) {
  const std::vector<LabeledExample> ex{{"t1", 0.91, 1}, {"t2", 0.94, 1}};
  EXPECT_EQ(confusion_at(ex, 0.91), (ConfusionCounts{1, 0, 1, 0}));
}

TEST(ConfusionAt, SetAndSpanAgree) {
  const auto ex = random_examples(9, 1003, 37);
  const ValidationSet set(ex);
  for (double t : {0.0, 0.2, 0.5, 0.77, 1.0}) EXPECT_EQ(confusion_at(set, t), confusion_at(ex, t));
}

TEST(Prf, SpecExamples) {
  const auto a = prf({1, 0, 0, 0});
  EXPECT_EQ(a.precision, 1.0);
  EXPECT_EQ(a.recall, 1.0);
  EXPECT_EQ(a.f1, 1.0);
  const auto b = prf({0, 0, 5, 5});
  EXPECT_EQ(b.precision, 0.0);
  EXPECT_TRUE(b.precision_undefined);
  EXPECT_EQ(b.recall, 0.0);
  EXPECT_FALSE(b.recall_undefined);
  EXPECT_EQ(b.f1, 0.0);
  const auto c = prf({3, 1, 1, 5});
  EXPECT_EQ(c.precision, 0.75);
  EXPECT_EQ(c.recall, 0.75);
  EXPECT_EQ(c.f1, 0.75);
}

TEST(Prf, MatchesExactDefinitionsOnSmallMatrices) {
  for (std::uint64_t tp = 0; tp <= 3; ++tp)
    for (std::uint64_t fp = 0; fp <= 3; ++fp)
      for (std::uint64_t fn = 0; fn <= 3; ++fn)
        for (std::uint64_t tn = 0; tn <= 3; ++tn) {
          const auto got = prf({tp, fp, fn, tn});
          const auto want = mt::exact_prf(tp, fp, fn);
          EXPECT_EQ(got.precision, want.precision.value());
          EXPECT_EQ(got.recall, want.recall.value());
          EXPECT_EQ(got.f1, want.f1.value());
          EXPECT_EQ(got.precision_undefined, want.precision.undefined());
          EXPECT_EQ(got.recall_undefined, want.recall.undefined());
        }
}

TEST(Prf, NegativeClassSwapsRoles) {
  const auto n = prf_negative_class({2, 0, 3, 5});
  EXPECT_EQ(n.precision, 5.0 / 8.0);
  EXPECT_EQ(n.recall, 1.0);
  EXPECT_EQ(n.f1, 10.0 / 13.0);
}

TEST(PrCurve, SingleScoreGivesThreePoints) {
  const std::vector<LabeledExample> ex{{"a", 0.4, 1}, {"b", 0.4, 0}, {"c", 0.4, 1}};
  const auto curve = pr_curve(ex);
  ASSERT_EQ(curve.size(), 3u);
  EXPECT_EQ(curve[0].threshold, 0.0);
  EXPECT_EQ(curve[1].threshold, 0.4);
  EXPECT_EQ(curve[2].threshold, 1.0);
}

TEST(PrCurve, BoundaryScoresShareBoundaryPoints) {
  const std::vector<LabeledExample> ex{{"a", 0.0, 0}, {"b", 1.0, 1}, {"c", 0.5, 1}};
  EXPECT_EQ(pr_curve(ex).size(), 3u);
}

TEST(PrCurve, PointsMatchDirectRecount) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ex = random_examples(seed, 300, 25 + static_cast<int>(seed));
    std::vector<double> distinct;
    for (const auto& e : ex) distinct.push_back(e.p);
    distinct.push_back(0.0);
    distinct.push_back(1.0);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const auto curve = pr_curve(ex);
    ASSERT_EQ(curve.size(), distinct.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
      EXPECT_EQ(curve[i].threshold, distinct[i]);
      ConfusionCounts c;
      for (const auto& e : ex) {
        if (e.p > distinct[i]) {
          (e.y ? c.tp : c.fp)++;
        } else {
          (e.y ? c.fn : c.tn)++;
        }
      }
      EXPECT_EQ(curve[i].counts, c);
      const auto want = mt::exact_prf(c.tp, c.fp, c.fn);
      EXPECT_EQ(curve[i].precision, want.precision.value());
      EXPECT_EQ(curve[i].recall, want.recall.value());
      EXPECT_EQ(curve[i].f1, want.f1.value());
      if (i) {
        EXPECT_LE(curve[i].recall, curve[i - 1].recall);
      }
    }
  }
}

TEST(SelectThreshold, SingleFeasiblePoint) {
  const std::vector<LabeledExample> ex{{"a", 0.7, 1}, {"b", 0.7, 0}};
  const auto r = select_threshold(pr_curve(ex), 1.0);
  EXPECT_EQ(r.tau, 0.0);
  EXPECT_EQ(r.curve[r.selected].precision, 0.5);
  EXPECT_EQ(r.curve[r.selected].recall, 1.0);
}

TEST(SelectThreshold, TenExampleFixture) {
  const auto ex = fixture_validation();
  ASSERT_EQ(ex.size(), 10u);
  const auto r = select_threshold(pr_curve(ex), kDefaultRecallFloor);
  mt::BruteForceChoice want;
  ASSERT_TRUE(mt::brute_force_threshold(ex, kDefaultRecallFloor, want));
  EXPECT_EQ(r.tau, want.threshold);
  // Hand check: above 0.93 only the two top positives pass; precision 1, recall 2/5.
  EXPECT_EQ(r.tau, 0.93);
  EXPECT_EQ(r.curve[r.selected].counts, (ConfusionCounts{2, 0, 3, 5}));
}

TEST(SelectThreshold, InfeasibleFloor) {
  const std::vector<LabeledExample> ex{{"a", 0.9, 0}, {"b", 0.5, 1}, {"c", 0.0, 1}};
  try {
    select_threshold(pr_curve(ex), 1.0);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("infeasible floor"), std::string::npos);
  }
}

TEST(SelectThreshold, MatchesBruteForce) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto ex = random_examples(seed, 250, 40);
    for (double floor : {0.0, 0.1, 0.35, 0.8}) {
      mt::BruteForceChoice want;
      const bool feasible = mt::brute_force_threshold(ex, floor, want);
      if (!feasible) {
        EXPECT_THROW(select_threshold(pr_curve(ex), floor), DataError);
        continue;
      }
      const auto r = select_threshold(pr_curve(ex), floor);
      EXPECT_EQ(r.tau, want.threshold) << seed << " " << floor;
      EXPECT_EQ(r.curve[r.selected].counts, want.counts);
    }
  }
}

TEST(SelectThreshold, PermutationInvariant) {
  auto ex = random_examples(77, 400, 30);
  const auto base = select_threshold(pr_curve(ex), 0.2);
  std::mt19937 gen(1);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(ex.begin(), ex.end(), gen);
    const auto again = select_threshold(pr_curve(ex), 0.2);
    EXPECT_EQ(again.tau, base.tau);
    EXPECT_EQ(again.selected, base.selected);
  }
}

TEST(ClassWeight, Values) {
  EXPECT_NEAR(class_weight(6977, 1007), 6.93, 0.005);
  EXPECT_EQ(class_weight(1, 1), 1.0);
  EXPECT_EQ(class_weight(0, 5), 0.0);
  EXPECT_THROW(class_weight(5, 0), std::domain_error);
  for (std::uint64_t k : {2u, 3u, 10u, 1000u}) EXPECT_EQ(class_weight(6977 * k, 1007 * k), class_weight(6977, 1007));
}

TEST(EvalReport, ReferenceRowsRenderExactly) {
  const std::vector<ClassRow> rows{{"Non-Claim", 0.91, 1.00, 0.95}, {"Claim", 0.80, 0.12, 0.22}};
  EXPECT_EQ(render_prf_table(rows),
            "Class      Precision Recall F1-Score\n"
            "Non-Claim       0.91   1.00     0.95\n"
            "Claim           0.80   0.12     0.22\n");
}

TEST(EvalReport, PerfectScorer) {
  const std::vector<LabeledExample> ex{{"a", 0.99, 1}, {"b", 0.95, 1}, {"c", 0.2, 0}};
  for (const auto& row : eval_report(ex, 0.91)) {
    EXPECT_EQ(row.precision, 1.0);
    EXPECT_EQ(row.recall, 1.0);
    EXPECT_EQ(row.f1, 1.0);
  }
}

TEST(EvalReport, TenExampleHandComputed) {
  const auto rows = eval_report(fixture_validation(), 0.93);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].label, "Non-Claim");
  EXPECT_EQ(rows[0].precision, 5.0 / 8.0);
  EXPECT_EQ(rows[0].recall, 1.0);
  EXPECT_EQ(rows[0].f1, 10.0 / 13.0);
  EXPECT_EQ(rows[1].label, "Claim");
  EXPECT_EQ(rows[1].precision, 1.0);
  EXPECT_EQ(rows[1].recall, 2.0 / 5.0);
  EXPECT_EQ(rows[1].f1, 4.0 / 7.0);
}

TEST(CalibrationDocument, RoundTrip) {
  const auto ex = random_examples(5, 120, 12);
  const auto r = select_threshold(pr_curve(ex), 0.3);
  std::ostringstream doc, curve;
  write_calibration_document(doc, r);
  write_curve_csv(curve, r.curve);
  std::istringstream din(doc.str()), cin(curve.str());
  const auto back = read_calibration_document(din, cin);
  EXPECT_EQ(back.tau, r.tau);
  EXPECT_EQ(back.recall_floor, r.recall_floor);
  EXPECT_EQ(back.selected, r.selected);
  ASSERT_EQ(back.curve.size(), r.curve.size());
  for (std::size_t i = 0; i < r.curve.size(); ++i) {
    EXPECT_EQ(back.curve[i].threshold, r.curve[i].threshold);
    EXPECT_EQ(back.curve[i].precision, r.curve[i].precision);
    EXPECT_EQ(back.curve[i].counts, r.curve[i].counts);
  }
}

TEST(LoadValidation, RejectsBadRows) {
  std::istringstream bad_label("tweet_id,p_claim,label\na,0.5,2\n");
  EXPECT_THROW(load_validation(bad_label), DataError);
  std::istringstream bad_p("tweet_id,p_claim,label\na,1.5,1\n");
  EXPECT_THROW(load_validation(bad_p), DataError);
  std::istringstream bad_header("id,p,label\n");
  EXPECT_THROW(load_validation(bad_header), DataError);
}
