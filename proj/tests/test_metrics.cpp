#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "dlpp/errors.hpp"
#include "dlpp/formulations.hpp"
#include "dlpp/metrics.hpp"
#include "dlpp/synthetic.hpp"

using namespace dlpp;

TEST(Metrics, DistanceExamples) {
  EXPECT_DOUBLE_EQ(normalized_distance(std::vector<double>{2, 3}, std::vector<double>{2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(normalized_distance(std::vector<double>{3}, std::vector<double>{2}), 0.5);
  EXPECT_DOUBLE_EQ(normalized_distance(std::vector<double>{2}, std::vector<double>{0}), 2.0);
  EXPECT_THROW(normalized_distance(std::vector<double>{1}, std::vector<double>{1, 2}), DimensionMismatch);
  EXPECT_THROW(normalized_distance(std::vector<double>{}, std::vector<double>{}), EmptyDomain);
}

TEST(Metrics, DistanceDomains) {
  const Instance t1 = fixture_t1();
  EXPECT_DOUBLE_EQ(normalized_distance(t1, {2, 2}), 0.0);
  // {0, 0.5} -> exp(mean(log 0.01, log 0.51)) - 0.01
  const double expected = std::exp(0.5 * (std::log(0.01) + std::log(0.51))) - 0.01;
  EXPECT_NEAR(normalized_distance(t1, {2, 1}), expected, 1e-12);
  EXPECT_NEAR(normalized_distance(t1, {2, 1}, DistanceDomain::FullGrid), expected, 1e-12);
}

TEST(Metrics, TotalVariationExamples) {
  using V = std::vector<std::vector<double>>;
  EXPECT_DOUBLE_EQ(total_variation(V{{1, 2}, {1, 2}}).value, 0.0);
  EXPECT_DOUBLE_EQ(total_variation(V{{2, 1}, {3, 1}}).value, 1.0);
  EXPECT_DOUBLE_EQ(total_variation(V{{0, 0}, {3, 4}, {3, 4}}).value, 5.0);
  EXPECT_TRUE(total_variation(V{{1}}).fewer_than_two);
  EXPECT_DOUBLE_EQ(total_variation(V{}).value, 0.0);
  EXPECT_DOUBLE_EQ(total_variation(std::vector<std::vector<int>>{{0, 0}, {3, 4}}).value, 5.0);
}

TEST(Metrics, TotalVariationIgnoresRepeatedLastPlan) {
  std::vector<std::vector<double>> plans{{1, 2}, {4, 6}, {0, 3}};
  const double before = total_variation(plans).value;
  plans.push_back(plans.back());
  EXPECT_DOUBLE_EQ(total_variation(plans).value, before);
}

TEST(Metrics, ShiftedGeomeanExamples) {
  EXPECT_NEAR(shifted_geomean({7, 7, 7}, 1.0), 7.0, 1e-12);
  EXPECT_DOUBLE_EQ(shifted_geomean({0, 0}, 0.01), 0.0);
  EXPECT_NEAR(shifted_geomean({1, 100}, 1.0), 13.21, 0.005);
  EXPECT_THROW(shifted_geomean({}, 1.0), EmptyDomain);
  EXPECT_THROW(shifted_geomean({-2.0}, 1.0), NonpositiveShifted);
}

TEST(Metrics, EvaluateIdenticalPlans) {
  const Instance t1 = fixture_t1();
  const GdoResult g = solve_gdo(t1);
  const auto rows = evaluate(t1, "t1", {{"gdo", g.plan, 0.5}, {"proxy", g.plan, 0.1}}, 150.0);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[0].gap, rows[1].gap);
  EXPECT_DOUBLE_EQ(rows[0].distance, rows[1].distance);
  EXPECT_DOUBLE_EQ(rows[0].gap, 0.0);
  EXPECT_DOUBLE_EQ(rows[0].hamming, 1.0);
  EXPECT_EQ(rows[0].trailers, 3);
}

TEST(Metrics, EvaluateRejectsOverload) {
  const Instance t1 = fixture_t1();
  // s2 carries 10.001 + 40 against a capacity of 50
  LoadPlan over;
  over.y = {2, 1};
  over.objective = 150.0;
  over.x = {{0, 0, 0, 60.0}, {1, 0, 0, 19.999}, {1, 1, 0, 10.001}, {2, 1, 0, 40.0}};
  try {
    evaluate(t1, "t1", {{"bad", over, 0.0}}, 150.0);
    FAIL() << "expected InfeasiblePlan";
  } catch (const InfeasiblePlan& e) {
    EXPECT_NE(std::string(e.what()).find("s2"), std::string::npos) << e.what();
  }
}

TEST(Metrics, ReportSummary) {
  const Instance t1 = fixture_t1();
  const GdoResult g = solve_gdo(t1);
  EvaluationReport report;
  report.rows = evaluate(t1, "t1", {{"gdo", g.plan, 0.5}}, 150.0);
  report.summarize();
  ASSERT_EQ(report.summary.count("gdo"), 1u);
  EXPECT_EQ(report.summary["gdo"].count, 1u);
  EXPECT_NEAR(report.summary["gdo"].time_geomean, 0.5, 1e-12);
  std::ostringstream csv;
  write_report_csv(csv, report);
  EXPECT_NE(csv.str().find("gdo"), std::string::npos);
  EXPECT_NE(report_summary_json(report).find("gap_geomean"), std::string::npos);
}
