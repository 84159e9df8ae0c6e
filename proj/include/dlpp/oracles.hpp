#pragma once

#include <cstddef>
#include <vector>

#include "dlpp/network.hpp"
#include "dlpp/plan.hpp"

namespace dlpp {

/// Single trailer type per sort pair, single compatible pair per commodity:
/// each pair gets ceil(volume / Q) trailers. Throws PreconditionViolated.
LoadPlan case1_solve(const Instance& inst);

/// One trailer type shared by all pairs, every commodity compatible with every
/// pair: all volume goes to the first pair. Throws PreconditionViolated.
LoadPlan case2_solve(const Instance& inst);

struct KnapsackResult {
  std::vector<int> counts;  // per input type
  double cost = 0.0;
  int trailers = 0;
};

/// Cheapest trailer mix whose total capacity covers `volume`; ties go to fewer
/// trailers. Dynamic program over the gcd of the capacities when everything is
/// integral, otherwise over a 1/1000 grid (capacities rounded down, volume up).
KnapsackResult min_knapsack(double volume, const std::vector<TrailerType>& types);

/// Single compatible pair per commodity, any number of trailer types:
/// an independent knapsack per sort pair. Throws PreconditionViolated.
LoadPlan case3_solve(const Instance& inst);

/// Every commodity compatible with every pair: one knapsack on the total
/// volume over all (pair, type) combinations. Throws PreconditionViolated.
LoadPlan case4_solve(const Instance& inst);

/// Smallest set of sort pairs covering every commodity, by enumeration of
/// subsets in increasing size. Throws TooLarge above 20 sort pairs.
std::vector<SortPairIndex> case5_set_cover(const Instance& inst);

/// Builds the unit-volume, unit-cost instance whose cost optimum equals the
/// minimum set cover of `sets` (one sort pair per set).
Instance case5_instance(std::size_t num_elements, const std::vector<std::vector<std::size_t>>& sets);

/// Maximum flow from commodities through compatible sort pairs into the
/// per-pair capacities (Edmonds-Karp). Returns the routed volume and the flows.
struct MaxFlowResult {
  double routed = 0.0;
  std::vector<PairFlow> flows;
};
MaxFlowResult max_flow_allocation(const Instance& inst, const std::vector<double>& pair_capacity);

struct BruteForceResult {
  double cost = 0.0;
  LoadPlan witness;
  std::vector<std::vector<int>> optimal;  // all cost-optimal y, lexicographic order
  std::size_t enumerated = 0;
};

/// Enumerates every integer y up to the trailer upper bounds (optionally capped
/// at `y_bound_cap`), checking flow feasibility with max-flow.
/// Throws BudgetExceeded when the grid exceeds `budget` points.
BruteForceResult brute_force_dlpp(const Instance& inst, int y_bound_cap = -1, std::size_t budget = 1'000'000);

}  // namespace dlpp
