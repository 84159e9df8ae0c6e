#pragma once

#include <optional>
#include <vector>

#include "dlpp/mip.hpp"
#include "dlpp/network.hpp"
#include "dlpp/plan.hpp"

namespace dlpp {

struct XColumn {
  CommodityIndex commodity;
  SortPairIndex sort_pair;
  TrailerIndex trailer;
  PairSlot slot;
  std::size_t column;
};

/// Column layout of a DLPP model: y per slot, then x per compatible
/// (k, s, v), then (goal-directed model only) w per slot.
struct VariableIndexMap {
  std::vector<std::size_t> y;
  std::vector<XColumn> x;
  std::vector<std::size_t> w;  // empty for the cost model
};

struct DlppModel {
  MixedIntegerProgram mip;
  VariableIndexMap index;
};

/// Cost-minimizing model: min sum c_v y  s.t. flow assignment per commodity,
/// slot capacity, x >= 0, y integer in [0, ceil(compatible volume / Q_v)].
DlppModel build_model1(const Instance& inst);

/// Goal-directed model: min sum w + eps * sum d x with w >= |y - gamma|
/// linearized and a trailer-cost budget sum c_v y <= z_star.
/// Throws MissingReference without a reference plan.
DlppModel build_model2(const Instance& inst, double z_star, std::optional<double> epsilon = {});

/// Turns a solver column vector into a LoadPlan (integers rounded, zero flows dropped).
LoadPlan extract_plan(const Instance& inst, const VariableIndexMap& index,
                      std::span<const double> solution);

/// Column vector for model 1 or 2 that reproduces `plan` (w set to |y - gamma|).
std::vector<double> plan_to_columns(const Instance& inst, const DlppModel& model,
                                    const LoadPlan& plan);

struct PlanSolve {
  MipResult mip;
  std::optional<LoadPlan> plan;
};

/// Builds and solves the cost model.
PlanSolve solve_model1(const Instance& inst, const MipOptions& options = {});

struct GdoResult {
  MipResult stage1;
  MipResult stage2;
  LoadPlan plan;
  double z_star = 0.0;
  bool z_star_proven = false;  // stage 1 reached proven optimality
  double hamming_distance = 0.0;
  double diversion_total = 0.0;
  double epsilon = 0.0;
};

struct GdoOptions {
  MipOptions stage1;
  MipOptions stage2;
};

/// Two-stage goal-directed optimization: solve the cost model, then minimize
/// the distance to the reference plan within the stage-1 cost. Stage 2 is
/// warm-started from the stage-1 incumbent. Throws NoIncumbent tagged with the stage.
GdoResult solve_gdo(const Instance& inst, const GdoOptions& options = {});

}  // namespace dlpp
