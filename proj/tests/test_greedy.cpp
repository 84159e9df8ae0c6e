#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "dlpp/errors.hpp"
#include "dlpp/formulations.hpp"
#include "dlpp/greedy.hpp"
#include "dlpp/instance_io.hpp"
#include "dlpp/random.hpp"
#include "dlpp/synthetic.hpp"

using namespace dlpp;

TEST(Greedy, Tolerance) {
  EXPECT_TRUE(within_integrality(1.999997));
  EXPECT_TRUE(within_integrality(2.0));
  EXPECT_FALSE(within_integrality(1.99997));
  EXPECT_FALSE(select_lift(std::vector<double>{1.999997, 3.0}));
}

TEST(Greedy, SelectLiftPicksNearestCeiling) {
  const std::vector<double> y{0.5, 2.9, 1.1, 3.9};
  EXPECT_EQ(select_lift(y), 1u);  // ties between 2.9 and 3.9 go to the lower index
  EXPECT_EQ(select_lift(std::vector<double>{0.2, 0.3}), 1u);
}

TEST(Greedy, IntegralRelaxationStopsAtOnce) {
  const Instance inst = load_instance_string(R"({
    "sort_pairs": [{"id": "s1", "origin": {"terminal": "O", "sort": "Night", "day": 1},
                    "destination": {"terminal": "D", "sort": "Sunrise", "day": 2},
                    "allowed_trailers": ["v1"]}],
    "trailer_types": [{"id": "v1", "capacity": 10, "cost": 10}],
    "commodities": [{"id": "k1", "volume": 30, "service_class": "Other", "primary": "s1", "alternates": []}],
    "reference_plan": null
  })");
  const GreedyResult r = greedy_solve(inst);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_EQ(r.plan.y, std::vector<int>{3});
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_FALSE(r.trace[0].lifted);
}

TEST(Greedy, T1FeasibleAndNoBetterThanOptimum) {
  const Instance t1 = fixture_t1();
  const GreedyResult r = greedy_solve(t1);
  EXPECT_FALSE(find_violation(t1, r.plan));
  EXPECT_GE(r.plan.objective, 150.0 - 1e-9);
  EXPECT_GE(r.iterations, 2u);
}

TEST(Greedy, RandomInstancesFeasible) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_small_instance(rng);
    const GreedyResult r = greedy_solve(inst);
    EXPECT_FALSE(find_violation(inst, r.plan)) << "trial " << trial;
    const PlanSolve opt = solve_model1(inst);
    EXPECT_GE(r.plan.objective, opt.mip.objective - 1e-7);
  }
}

TEST(Greedy, SyntheticTerminal) {
  const Instance inst = synthetic_terminal(2);
  const GreedyResult r = greedy_solve(inst);
  EXPECT_FALSE(find_violation(inst, r.plan));
  // Each lift raises one bound by at least one, so the trace stays short.
  EXPECT_EQ(r.trace.size(), r.iterations);
  EXPECT_LE(r.iterations, 200u);
}

TEST(Greedy, IterationLimit) {
  GreedyOptions o;
  o.max_iters = 1;
  EXPECT_THROW(greedy_solve(fixture_t1(), o), IterationLimit);
}

TEST(Greedy, TraceCsv) {
  const GreedyResult r = greedy_solve(fixture_t1());
  std::ostringstream out;
  write_greedy_trace(out, r);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("iteration,lifted_slot,new_lower,lp_objective\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), r.trace.size() + 1);
}
