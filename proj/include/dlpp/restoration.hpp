#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlpp/mip.hpp"
#include "dlpp/network.hpp"
#include "dlpp/plan.hpp"

namespace dlpp {

/// Predicted trailer counts with the capacity they install per sort pair.
struct PredictedPlan {
  std::vector<int> y_hat;      // slot-indexed
  std::vector<double> lambda;  // per sort pair: sum_v Q_v * y_hat
};

/// Builds a PredictedPlan, clamping negative counts to zero.
PredictedPlan make_predicted_plan(const Instance& inst, std::vector<int> y_hat);

/// Capacity shortfall per sort pair and the block of capacity that would cover it.
struct ViolationProfile {
  std::vector<double> z;                             // per sort pair
  std::vector<SortPairIndex> violated;               // z_s > threshold, ascending
  std::vector<double> xi;                            // per sort pair, 0 when not violated
  std::vector<std::optional<TrailerIndex>> chosen;   // per sort pair
  std::vector<int> block_trailers;                   // ceil(z_s / Q_v) for the chosen type

  double total_violation() const;
};

inline constexpr double kViolationThreshold = 1e-6;

/// Solves the flow system for fixed capacities. Returns the plan with y = y_hat,
/// or nullopt when the capacities cannot hold all commodity volume.
std::optional<LoadPlan> allocate_flows(const Instance& inst, const PredictedPlan& pred);

/// Minimizes total capacity violation; sizes an extra block for each violated pair.
ViolationProfile violation_lp(const Instance& inst, const PredictedPlan& pred);

/// Sizes extra blocks for a given violation vector: the type minimizing
/// c_v * ceil(z_s / Q_v), ties to the larger capacity, then the lower id.
ViolationProfile size_violations(const Instance& inst, std::vector<double> z);

struct RestorationReport {
  bool allocation_feasible = false;  // prediction held all volume as is
  ViolationProfile profile;
  std::vector<int> selected;         // per sort pair: 1 where the block was added
  std::vector<int> added;            // slot-indexed trailers added
  double predicted_cost = 0.0;
  double final_cost = 0.0;
  std::size_t binaries = 0;          // size of the selection model
};

struct RestoreResult {
  LoadPlan plan;
  RestorationReport report;
};

/// Returns the prediction as is when it is feasible; otherwise picks, among the
/// violated pairs, the cheapest set of capacity blocks (in total capacity) that
/// makes all volume fit, adds those trailers and recomputes flows.
RestoreResult restore(const Instance& inst, const PredictedPlan& pred, const MipOptions& options = {});

/// Runs only the selection step for a given violation profile.
RestoreResult restore_with_profile(const Instance& inst, const PredictedPlan& pred,
                                   const ViolationProfile& profile, const MipOptions& options = {});

/// Fraction of the final installed capacity that was already predicted.
double predicted_capacity_share(const Instance& inst, const std::vector<int>& y_hat,
                                const std::vector<int>& y_final);

std::string restoration_report_json(const Instance& inst, const RestorationReport& report);

}  // namespace dlpp
