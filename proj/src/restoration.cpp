#include "dlpp/restoration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dlpp/errors.hpp"
#include "json.hpp"

namespace dlpp {

namespace {

struct PairColumn {
  CommodityIndex commodity;
  SortPairIndex sort_pair;
  std::size_t column;
};

/// Flow columns x^k_s pooled over trailer types, with one flow row per commodity.
/// Capacity rows are left to the caller.
struct FlowModel {
  MixedIntegerProgram mip;
  std::vector<PairColumn> columns;
  std::vector<std::vector<SparseEntry>> load;  // per sort pair: sum_k x^k_s
};

FlowModel flow_model(const Instance& inst) {
  FlowModel m;
  m.load.resize(inst.sort_pairs.size());
  std::vector<std::vector<SparseEntry>> rows(inst.commodities.size());
  for (CommodityIndex k = 0; k < inst.commodities.size(); ++k) {
    for (SortPairIndex s : inst.commodities[k].compatible()) {
      const std::size_t col = m.mip.lp.add_variable(0.0);
      m.columns.push_back({k, s, col});
      rows[k].push_back({col, 1.0});
      m.load[s].push_back({col, 1.0});
    }
  }
  for (CommodityIndex k = 0; k < inst.commodities.size(); ++k) {
    m.mip.lp.add_row(std::move(rows[k]), RowSense::Equal, inst.commodities[k].volume);
  }
  return m;
}

std::vector<PairFlow> pair_flows(const FlowModel& m, std::span<const double> x) {
  std::vector<PairFlow> out;
  for (const auto& c : m.columns) {
    const double v = std::max(0.0, x[c.column]);
    if (v > 1e-9) out.push_back({c.commodity, c.sort_pair, v});
  }
  return out;
}

LoadPlan plan_from_flows(const Instance& inst, std::vector<int> y, const std::vector<PairFlow>& flows) {
  LoadPlan plan;
  plan.x = split_over_trailers(inst, y, flows);
  plan.objective = plan_cost(inst, y);
  plan.y = std::move(y);
  return plan;
}

}  // namespace

PredictedPlan make_predicted_plan(const Instance& inst, std::vector<int> y_hat) {
  const PairIndex pairs(inst);
  if (y_hat.size() != pairs.size()) {
    throw DimensionMismatch("prediction has " + std::to_string(y_hat.size()) + " slots, instance has " +
                            std::to_string(pairs.size()));
  }
  for (int& y : y_hat) y = std::max(y, 0);
  PredictedPlan pred;
  pred.lambda = sort_pair_capacity(inst, y_hat);
  pred.y_hat = std::move(y_hat);
  return pred;
}

double ViolationProfile::total_violation() const { return std::accumulate(z.begin(), z.end(), 0.0); }

std::optional<LoadPlan> allocate_flows(const Instance& inst, const PredictedPlan& pred) {
  FlowModel m = flow_model(inst);
  for (SortPairIndex s = 0; s < inst.sort_pairs.size(); ++s) {
    if (m.load[s].empty()) continue;
    m.mip.lp.add_row(std::move(m.load[s]), RowSense::LessEqual, pred.lambda.at(s));
  }
  const LpSolution sol = solve_lp(m.mip.lp);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  return plan_from_flows(inst, pred.y_hat, pair_flows(m, sol.primal));
}

ViolationProfile size_violations(const Instance& inst, std::vector<double> z) {
  const std::size_t n = inst.sort_pairs.size();
  if (z.size() != n) throw DimensionMismatch("violation vector must have one entry per sort pair");
  ViolationProfile prof;
  prof.xi.assign(n, 0.0);
  prof.chosen.assign(n, std::nullopt);
  prof.block_trailers.assign(n, 0);
  for (SortPairIndex s = 0; s < n; ++s) {
    z[s] = std::max(0.0, z[s]);
    if (z[s] <= kViolationThreshold) continue;
    prof.violated.push_back(s);
    std::optional<TrailerIndex> best;
    double best_cost = 0.0;
    int best_count = 0;
    for (TrailerIndex v : inst.sort_pairs[s].allowed_trailers) {
      const auto& t = inst.trailer_types[v];
      const int count = static_cast<int>(std::ceil(z[s] / t.capacity - 1e-9));
      const double cost = t.cost * count;
      const bool better = !best || cost < best_cost ||
                          (cost == best_cost && t.capacity > inst.trailer_types[*best].capacity);
      if (better) {
        best = v;
        best_cost = cost;
        best_count = count;
      }
    }
    prof.chosen[s] = best;
    prof.block_trailers[s] = best_count;
    prof.xi[s] = best_count * inst.trailer_types[*best].capacity;
  }
  prof.z = std::move(z);
  return prof;
}

ViolationProfile violation_lp(const Instance& inst, const PredictedPlan& pred) {
  FlowModel m = flow_model(inst);
  std::vector<std::size_t> zcol(inst.sort_pairs.size());
  for (SortPairIndex s = 0; s < inst.sort_pairs.size(); ++s) {
    zcol[s] = m.mip.lp.add_variable(1.0);
    auto row = std::move(m.load[s]);
    row.push_back({zcol[s], -1.0});
    m.mip.lp.add_row(std::move(row), RowSense::LessEqual, pred.lambda.at(s));
  }
  const LpSolution sol = solve_lp(m.mip.lp);
  if (sol.status != LpStatus::Optimal) throw NumericalFailure("violation LP did not reach optimality");
  std::vector<double> z(inst.sort_pairs.size());
  for (SortPairIndex s = 0; s < z.size(); ++s) z[s] = sol.primal[zcol[s]];
  return size_violations(inst, std::move(z));
}

RestoreResult restore_with_profile(const Instance& inst, const PredictedPlan& pred,
                                   const ViolationProfile& profile, const MipOptions& options) {
  const PairIndex pairs(inst);
  RestoreResult out;
  RestorationReport& rep = out.report;
  rep.profile = profile;
  rep.selected.assign(inst.sort_pairs.size(), 0);
  rep.added.assign(pairs.size(), 0);
  rep.predicted_cost = plan_cost(inst, pred.y_hat);

  FlowModel m = flow_model(inst);
  std::vector<std::optional<std::size_t>> ucol(inst.sort_pairs.size());
  for (SortPairIndex s : profile.violated) {
    ucol[s] = m.mip.lp.add_variable(profile.xi[s], 0.0, 1.0);
  }
  m.mip.integer.assign(m.mip.lp.num_vars(), false);
  for (SortPairIndex s = 0; s < inst.sort_pairs.size(); ++s) {
    auto row = std::move(m.load[s]);
    if (ucol[s]) {
      m.mip.mark_binary(*ucol[s]);
      row.push_back({*ucol[s], -profile.xi[s]});
    }
    if (row.empty()) continue;
    m.mip.lp.add_row(std::move(row), RowSense::LessEqual, pred.lambda.at(s));
  }
  rep.binaries = profile.violated.size();

  MipOptions opts = options;
  // Adding every block is feasible by construction; start from there.
  std::vector<double> all_on(m.mip.lp.num_vars(), 0.0);
  for (SortPairIndex s : profile.violated) all_on[*ucol[s]] = 1.0;
  if (auto start = complete_with_fixed_integers(m.mip, all_on)) opts.warm_start = std::move(*start);
  const MipResult res = solve_mip(m.mip, opts);
  if (!res.incumbent) throw NumericalFailure("capacity selection model has no feasible solution");

  std::vector<int> y = pred.y_hat;
  for (SortPairIndex s : profile.violated) {
    if (std::lround((*res.incumbent)[*ucol[s]]) != 1) continue;
    rep.selected[s] = 1;
    const auto slot = pairs.find(s, *profile.chosen[s]);
    y[*slot] += profile.block_trailers[s];
    rep.added[*slot] += profile.block_trailers[s];
  }
  const PredictedPlan final_pred = make_predicted_plan(inst, y);
  if (auto plan = allocate_flows(inst, final_pred)) {
    out.plan = std::move(*plan);
  } else {
    out.plan = plan_from_flows(inst, y, pair_flows(m, *res.incumbent));
  }
  rep.final_cost = out.plan.objective;
  return out;
}

RestoreResult restore(const Instance& inst, const PredictedPlan& pred, const MipOptions& options) {
  if (auto plan = allocate_flows(inst, pred)) {
    RestoreResult out;
    out.plan = std::move(*plan);
    out.report.allocation_feasible = true;
    out.report.profile = size_violations(inst, std::vector<double>(inst.sort_pairs.size(), 0.0));
    out.report.selected.assign(inst.sort_pairs.size(), 0);
    out.report.added.assign(pred.y_hat.size(), 0);
    out.report.predicted_cost = out.report.final_cost = out.plan.objective;
    return out;
  }
  ViolationProfile profile = violation_lp(inst, pred);
  if (profile.violated.empty()) {
    // The flow system and the violation LP disagree only within tolerance;
    // fall back to covering whatever residue the LP reports.
    for (SortPairIndex s = 0; s < profile.z.size(); ++s) profile.z[s] = profile.z[s] > 0.0 ? 1.0 : 0.0;
    profile = size_violations(inst, profile.z);
    if (profile.violated.empty()) throw NumericalFailure("flow system infeasible but no violation found");
  }
  return restore_with_profile(inst, pred, profile, options);
}

double predicted_capacity_share(const Instance& inst, const std::vector<int>& y_hat,
                                const std::vector<int>& y_final) {
  const PairIndex pairs(inst);
  double predicted = 0.0;
  double total = 0.0;
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    const double q = inst.trailer_types[pairs[p].second].capacity;
    predicted += q * std::min(y_hat.at(p), y_final.at(p));
    total += q * y_final.at(p);
  }
  return total > 0.0 ? predicted / total : 1.0;
}

std::string restoration_report_json(const Instance& inst, const RestorationReport& report) {
  using Json = nlohmann::ordered_json;
  const PairIndex pairs(inst);
  Json doc;
  doc["allocation_feasible"] = report.allocation_feasible;
  Json violated = Json::array();
  for (SortPairIndex s : report.profile.violated) {
    violated.push_back(Json{{"sort_pair", inst.sort_pairs[s].id},
                            {"z", report.profile.z[s]},
                            {"xi", report.profile.xi[s]},
                            {"trailer_type", inst.trailer_types[*report.profile.chosen[s]].id},
                            {"block_trailers", report.profile.block_trailers[s]},
                            {"selected", report.selected.at(s) == 1}});
  }
  doc["violated"] = std::move(violated);
  Json added = Json::array();
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    if (report.added.at(p) == 0) continue;
    added.push_back(Json{{"sort_pair", inst.sort_pairs[pairs[p].first].id},
                         {"trailer_type", inst.trailer_types[pairs[p].second].id},
                         {"count", report.added[p]}});
  }
  doc["added"] = std::move(added);
  doc["predicted_cost"] = report.predicted_cost;
  doc["final_cost"] = report.final_cost;
  doc["cost_delta"] = report.final_cost - report.predicted_cost;
  return doc.dump(2) + "\n";
}

}  // namespace dlpp
