#include "dlpp/formulations.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "dlpp/errors.hpp"

namespace dlpp {

namespace {

/// Shared y/x columns plus flow-assignment and capacity rows.
DlppModel build_core(const Instance& inst, bool with_costs, double epsilon) {
  const PairIndex pairs(inst);
  DlppModel model;
  LinearProgram& lp = model.mip.lp;

  for (PairSlot p = 0; p < pairs.size(); ++p) {
    const auto [s, v] = pairs[p];
    const double cost = with_costs ? inst.trailer_types[v].cost : 0.0;
    const double ub = trailer_upper_bound(inst, s, v);
    model.index.y.push_back(lp.add_variable(cost, 0.0, ub,
                                            "y_" + inst.sort_pairs[s].id + "_" + inst.trailer_types[v].id));
  }
  for (CommodityIndex k = 0; k < inst.commodities.size(); ++k) {
    const auto& c = inst.commodities[k];
    for (SortPairIndex s : c.compatible()) {
      const double d = with_costs ? 0.0 : epsilon * diversion_cost(inst, k, s);
      for (PairSlot p : pairs.slots_of(s)) {
        const TrailerIndex v = pairs[p].second;
        const std::size_t col = lp.add_variable(
            d, 0.0, kInfinity,
            "x_" + c.id + "_" + inst.sort_pairs[s].id + "_" + inst.trailer_types[v].id);
        model.index.x.push_back({k, s, v, p, col});
      }
    }
  }
  model.mip.integer.assign(lp.num_vars(), false);
  for (std::size_t col : model.index.y) model.mip.integer[col] = true;

  // Flow assignment: every commodity's volume lands on compatible slots.
  std::vector<std::vector<SparseEntry>> flow(inst.commodities.size());
  std::vector<std::vector<SparseEntry>> capacity(pairs.size());
  for (const auto& xc : model.index.x) {
    flow[xc.commodity].push_back({xc.column, 1.0});
    capacity[xc.slot].push_back({xc.column, 1.0});
  }
  for (CommodityIndex k = 0; k < inst.commodities.size(); ++k) {
    if (flow[k].empty()) {
      throw DegenerateInstance("commodity " + inst.commodities[k].id + " has no compatible slot");
    }
    lp.add_row(std::move(flow[k]), RowSense::Equal, inst.commodities[k].volume,
               "flow_" + inst.commodities[k].id);
  }
  // Capacity: load on a slot fits into Q_v * y.
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    const auto [s, v] = pairs[p];
    capacity[p].push_back({model.index.y[p], -inst.trailer_types[v].capacity});
    lp.add_row(std::move(capacity[p]), RowSense::LessEqual, 0.0,
               "cap_" + inst.sort_pairs[s].id + "_" + inst.trailer_types[v].id);
  }
  return model;
}

}  // namespace

DlppModel build_model1(const Instance& inst) { return build_core(inst, true, 0.0); }

DlppModel build_model2(const Instance& inst, double z_star, std::optional<double> epsilon) {
  if (!inst.reference_plan) throw MissingReference("goal-directed model needs a reference plan");
  if (!std::isfinite(z_star)) throw std::invalid_argument("stage-1 budget must be finite");
  const double eps = epsilon ? *epsilon : epsilon_weight(inst).value;
  DlppModel model = build_core(inst, false, eps);
  LinearProgram& lp = model.mip.lp;
  const PairIndex pairs(inst);
  const std::vector<int> gamma = reference_counts(inst);

  for (PairSlot p = 0; p < pairs.size(); ++p) {
    const auto [s, v] = pairs[p];
    model.index.w.push_back(lp.add_variable(
        1.0, 0.0, kInfinity, "w_" + inst.sort_pairs[s].id + "_" + inst.trailer_types[v].id));
  }
  model.mip.integer.resize(lp.num_vars(), false);
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    const std::size_t y = model.index.y[p];
    const std::size_t w = model.index.w[p];
    lp.add_row({{y, 1.0}, {w, -1.0}}, RowSense::LessEqual, gamma[p]);
    lp.add_row({{y, 1.0}, {w, 1.0}}, RowSense::GreaterEqual, gamma[p]);
  }
  std::vector<SparseEntry> budget;
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    budget.push_back({model.index.y[p], inst.trailer_types[pairs[p].second].cost});
  }
  lp.add_row(std::move(budget), RowSense::LessEqual, z_star, "budget");
  return model;
}

LoadPlan extract_plan(const Instance& inst, const VariableIndexMap& index,
                      std::span<const double> solution) {
  LoadPlan plan;
  plan.y.reserve(index.y.size());
  for (std::size_t col : index.y) plan.y.push_back(static_cast<int>(std::lround(solution[col])));
  for (const auto& xc : index.x) {
    const double v = solution[xc.column];
    if (v > 1e-9) plan.x.push_back({xc.commodity, xc.sort_pair, xc.trailer, v});
  }
  plan.objective = plan_cost(inst, plan.y);
  return plan;
}

std::vector<double> plan_to_columns(const Instance& inst, const DlppModel& model,
                                    const LoadPlan& plan) {
  std::vector<double> cols(model.mip.lp.num_vars(), 0.0);
  for (std::size_t p = 0; p < model.index.y.size(); ++p) cols[model.index.y[p]] = plan.y.at(p);
  std::map<std::tuple<CommodityIndex, SortPairIndex, TrailerIndex>, std::size_t> xcol;
  for (const auto& xc : model.index.x) xcol[{xc.commodity, xc.sort_pair, xc.trailer}] = xc.column;
  for (const auto& f : plan.x) {
    auto it = xcol.find({f.commodity, f.sort_pair, f.trailer});
    if (it != xcol.end()) cols[it->second] += f.volume;
  }
  if (!model.index.w.empty()) {
    const std::vector<int> gamma = reference_counts(inst);
    for (std::size_t p = 0; p < model.index.w.size(); ++p) {
      cols[model.index.w[p]] = std::abs(plan.y[p] - gamma[p]);
    }
  }
  return cols;
}

PlanSolve solve_model1(const Instance& inst, const MipOptions& options) {
  const DlppModel model = build_model1(inst);
  PlanSolve out;
  out.mip = solve_mip(model.mip, options);
  if (out.mip.incumbent) out.plan = extract_plan(inst, model.index, *out.mip.incumbent);
  return out;
}

GdoResult solve_gdo(const Instance& inst, const GdoOptions& options) {
  if (!inst.reference_plan) throw MissingReference("goal-directed optimization needs a reference plan");
  GdoResult result;

  const DlppModel m1 = build_model1(inst);
  result.stage1 = solve_mip(m1.mip, options.stage1);
  if (!result.stage1.incumbent) {
    throw NoIncumbent("stage1", std::string("cost model ended with status ") +
                                    to_string(result.stage1.status));
  }
  const LoadPlan stage1_plan = extract_plan(inst, m1.index, *result.stage1.incumbent);
  // The budget is the stage-1 incumbent cost, proven optimal or not.
  result.z_star = stage1_plan.objective;
  result.z_star_proven = result.stage1.status == MipStatus::Optimal;

  result.epsilon = epsilon_weight(inst).value;
  const DlppModel m2 = build_model2(inst, result.z_star, result.epsilon);
  MipOptions stage2 = options.stage2;
  stage2.warm_start = plan_to_columns(inst, m2, stage1_plan);
  result.stage2 = solve_mip(m2.mip, stage2);
  if (!result.stage2.incumbent) {
    throw NoIncumbent("stage2", std::string("goal-directed model ended with status ") +
                                    to_string(result.stage2.status));
  }
  result.plan = extract_plan(inst, m2.index, *result.stage2.incumbent);
  result.hamming_distance = hamming_distance(inst, result.plan.y);
  result.diversion_total = diversion_total(inst, result.plan);
  return result;
}

}  // namespace dlpp
