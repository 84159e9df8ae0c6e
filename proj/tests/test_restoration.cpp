#include <gtest/gtest.h>

#include <sstream>

#include "dlpp/errors.hpp"
#include "dlpp/formulations.hpp"
#include "dlpp/oracles.hpp"
#include "dlpp/random.hpp"
#include "dlpp/restoration.hpp"
#include "dlpp/synthetic.hpp"

using namespace dlpp;

namespace {

/// Two pairs with Q = c = 2; 2 units pinned to each pair and 2 flexible units.
Instance two_pair() {
  Instance inst;
  inst.trailer_types.push_back({"v1", 2.0, 2.0});
  for (const char* d : {"A", "B"}) {
    SortPair sp;
    sp.id = std::string("s-") + d;
    sp.origin = {"O", Sort::Night, 1};
    sp.destination = {d, Sort::Sunrise, 2};
    sp.allowed_trailers = {0};
    inst.sort_pairs.push_back(sp);
  }
  auto add = [&](std::string id, double q, SortPairIndex primary, std::vector<Alternate> alts) {
    Commodity c;
    c.id = std::move(id);
    c.volume = q;
    c.service_class = ServiceClass::TwoDay;
    c.primary = primary;
    c.alternates = std::move(alts);
    inst.commodities.push_back(c);
  };
  add("a", 2.0, 0, {});
  add("b", 2.0, 1, {});
  add("c", 2.0, 0, {{1, 5.0}});
  validate(inst);
  return inst;
}

int total(const std::vector<int>& y) {
  int t = 0;
  for (int v : y) t += v;
  return t;
}

}  // namespace

TEST(Restoration, AllocateT1Optimum) {
  const Instance t1 = fixture_t1();
  const auto plan = allocate_flows(t1, make_predicted_plan(t1, {2, 1}));
  ASSERT_TRUE(plan);
  EXPECT_DOUBLE_EQ(plan->objective, 150.0);
  EXPECT_FALSE(find_violation(t1, *plan));
}

TEST(Restoration, AllocateShortfall) {
  const Instance t1 = fixture_t1();
  EXPECT_FALSE(allocate_flows(t1, make_predicted_plan(t1, {0, 0})));
}

TEST(Restoration, AllocateNoTrimming) {
  const Instance t1 = fixture_t1();
  const auto plan = allocate_flows(t1, make_predicted_plan(t1, {9, 9}));
  ASSERT_TRUE(plan);
  EXPECT_EQ(plan->y, (std::vector<int>{9, 9}));
}

TEST(Restoration, PredictedPlanLambda) {
  const Instance t1 = fixture_t1();
  const PredictedPlan p = make_predicted_plan(t1, {2, -1});
  EXPECT_EQ(p.y_hat, (std::vector<int>{2, 0}));
  EXPECT_EQ(p.lambda, (std::vector<double>{100.0, 0.0}));
  EXPECT_THROW(make_predicted_plan(t1, {1}), DimensionMismatch);
}

TEST(Restoration, ViolationLpFeasiblePrediction) {
  const Instance t1 = fixture_t1();
  const ViolationProfile v = violation_lp(t1, make_predicted_plan(t1, {2, 1}));
  EXPECT_TRUE(v.violated.empty());
  EXPECT_NEAR(v.total_violation(), 0.0, 1e-9);
}

TEST(Restoration, ViolationLpShortfall) {
  const Instance t1 = fixture_t1();
  const ViolationProfile v = violation_lp(t1, make_predicted_plan(t1, {1, 1}));
  EXPECT_NEAR(v.total_violation(), 30.0, 1e-7);
  EXPECT_FALSE(v.violated.empty());
}

TEST(Restoration, BlockSizing) {
  Instance inst = two_pair();
  std::vector<double> z{3.0, 0.0};
  const ViolationProfile v = size_violations(inst, z);
  EXPECT_EQ(v.violated, std::vector<SortPairIndex>{0});
  EXPECT_DOUBLE_EQ(v.xi[0], 4.0);
  EXPECT_EQ(v.block_trailers[0], 2);
  EXPECT_DOUBLE_EQ(v.xi[1], 0.0);
}

TEST(Restoration, BlockSizingPicksCheapestCover) {
  Instance inst = synthetic_terminal(1);
  // Pair 0 allows both sizes in the synthetic family when its pattern is {0, 1}.
  SortPairIndex s = 0;
  while (inst.sort_pairs[s].allowed_trailers.size() < 2) ++s;
  std::vector<double> z(inst.sort_pairs.size(), 0.0);
  z[s] = 20.0;  // one 25-unit trailer costs 25, one 50-unit costs 50
  ViolationProfile v = size_violations(inst, z);
  EXPECT_EQ(inst.trailer_types[*v.chosen[s]].capacity, 25.0);
  z[s] = 45.0;  // 2 x 25 ties 1 x 50 on cost; larger capacity wins
  v = size_violations(inst, z);
  EXPECT_EQ(inst.trailer_types[*v.chosen[s]].capacity, 50.0);
}

TEST(Restoration, TwoPairExampleAddsOneTrailer) {
  const Instance inst = two_pair();
  const PredictedPlan pred = make_predicted_plan(inst, {1, 1});
  const ViolationProfile profile = size_violations(inst, {1.0, 1.0});
  EXPECT_EQ(profile.violated, (std::vector<SortPairIndex>{0, 1}));
  EXPECT_DOUBLE_EQ(profile.xi[0], 2.0);
  EXPECT_DOUBLE_EQ(profile.xi[1], 2.0);
  const RestoreResult r = restore_with_profile(inst, pred, profile);
  EXPECT_EQ(total(r.report.added), 1);
  EXPECT_EQ(total(r.plan.y), 3);
  EXPECT_FALSE(find_violation(inst, r.plan));
}

TEST(Restoration, OptimumPassesThrough) {
  const Instance t1 = fixture_t1();
  const RestoreResult r = restore(t1, make_predicted_plan(t1, {2, 1}));
  EXPECT_TRUE(r.report.allocation_feasible);
  EXPECT_EQ(r.plan.y, (std::vector<int>{2, 1}));
  EXPECT_DOUBLE_EQ(r.plan.objective, 150.0);
}

TEST(Restoration, UnderestimateByOneAddsOne) {
  const Instance t1 = fixture_t1();
  const RestoreResult r = restore(t1, make_predicted_plan(t1, {1, 1}));
  EXPECT_FALSE(r.report.allocation_feasible);
  EXPECT_EQ(total(r.report.added), 1);
  EXPECT_DOUBLE_EQ(r.plan.objective, 150.0);
  EXPECT_FALSE(find_violation(t1, r.plan));
}

TEST(Restoration, RandomPredictionsAlwaysFeasible) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_small_instance(rng);
    const double opt = brute_force_dlpp(inst).cost;
    const PairIndex pairs(inst);
    std::vector<int> y(pairs.size());
    for (auto& v : y) v = trial % 5 == 0 ? 0 : static_cast<int>(rng.below(3));
    const RestoreResult r = restore(inst, make_predicted_plan(inst, y));
    EXPECT_FALSE(find_violation(inst, r.plan)) << "trial " << trial;
    EXPECT_GE(r.plan.objective, opt - 1e-9) << "trial " << trial;
    for (std::size_t i = 0; i < y.size(); ++i) EXPECT_GE(r.plan.y[i], y[i]);
  }
}

TEST(Restoration, CapacityShare) {
  const Instance t1 = fixture_t1();
  EXPECT_DOUBLE_EQ(predicted_capacity_share(t1, {2, 1}, {2, 1}), 1.0);
  EXPECT_DOUBLE_EQ(predicted_capacity_share(t1, {1, 1}, {2, 1}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(predicted_capacity_share(t1, {0, 0}, {2, 1}), 0.0);
}

TEST(Restoration, ReportJson) {
  const Instance t1 = fixture_t1();
  const RestoreResult r = restore(t1, make_predicted_plan(t1, {1, 1}));
  const std::string json = restoration_report_json(t1, r.report);
  EXPECT_NE(json.find("\"allocation_feasible\""), std::string::npos);
  EXPECT_NE(json.find("\"violated\""), std::string::npos);
}
