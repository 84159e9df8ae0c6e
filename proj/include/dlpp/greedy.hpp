#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dlpp/network.hpp"
#include "dlpp/plan.hpp"

namespace dlpp {

inline constexpr double kGreedyIntegralityTol = 1e-5;

struct GreedyStep {
  std::size_t iteration = 0;
  std::optional<PairSlot> lifted;  // empty on the final, integral iteration
  double new_lower = 0.0;
  double lp_objective = 0.0;
};

struct GreedyResult {
  LoadPlan plan;
  std::size_t iterations = 0;  // LP solves
  std::vector<GreedyStep> trace;
  double wall_time = 0.0;
};

struct GreedyOptions {
  /// 0 means the termination bound: sum of trailer upper bounds plus one.
  std::size_t max_iters = 0;
  double integrality_tol = kGreedyIntegralityTol;
};

bool within_integrality(double value, double tol = kGreedyIntegralityTol);

/// Index of the fractional value with the smallest ceil(y) - y (lowest index on
/// ties), or nullopt when every value is integral within tol.
std::optional<std::size_t> select_lift(std::span<const double> values, double tol = kGreedyIntegralityTol);

/// Solves the LP relaxation of the cost model repeatedly, each time raising the
/// lower bound of the most nearly integral fractional trailer count to its
/// ceiling, until all counts are integral. Throws IterationLimit.
GreedyResult greedy_solve(const Instance& inst, const GreedyOptions& options = {});

/// CSV with columns iteration,lifted_slot,new_lower,lp_objective.
void write_greedy_trace(std::ostream& out, const GreedyResult& result);

}  // namespace dlpp
