#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlpp/network.hpp"

namespace dlpp {

struct FlowEntry {
  CommodityIndex commodity = 0;
  SortPairIndex sort_pair = 0;
  TrailerIndex trailer = 0;
  double volume = 0.0;
};

/// Trailer counts per compatible (s, v) slot plus the volume split.
struct LoadPlan {
  std::vector<int> y;           // indexed by PairIndex slot
  std::vector<FlowEntry> x;     // nonzero volumes only
  double objective = 0.0;       // trailer cost sum c_v * y
};

/// Sum over slots of c_v * y.
double plan_cost(const Instance& inst, const std::vector<int>& y);

/// Total installed capacity per sort pair.
std::vector<double> sort_pair_capacity(const Instance& inst, const std::vector<int>& y);

/// First violated constraint (flow conservation per commodity, capacity per
/// slot, compatibility, sign) within tolerance, or nullopt when feasible.
std::optional<std::string> find_violation(const Instance& inst, const LoadPlan& plan,
                                          double tol = 1e-6);

/// Throws InfeasiblePlan naming the violated constraint.
void require_feasible(const Instance& inst, const LoadPlan& plan, double tol = 1e-6);

/// L1 distance between the plan's counts and the reference plan.
double hamming_distance(const Instance& inst, const std::vector<int>& y);

/// Sum of d^k_s * x^k_{s,v}.
double diversion_total(const Instance& inst, const LoadPlan& plan);

/// Reference counts as a slot vector.
std::vector<int> reference_counts(const Instance& inst);

struct PairFlow {
  CommodityIndex commodity = 0;
  SortPairIndex sort_pair = 0;
  double volume = 0.0;
};

/// Spreads per-sort-pair volumes over the trailer slots of each pair, filling
/// slots in order up to Q_v * y.
std::vector<FlowEntry> split_over_trailers(const Instance& inst, const std::vector<int>& y,
                                           const std::vector<PairFlow>& flows);

std::string plan_to_json(const Instance& inst, const LoadPlan& plan);
LoadPlan plan_from_json(const Instance& inst, const std::string& text);

}  // namespace dlpp
