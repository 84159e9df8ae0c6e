#include "dlpp/plan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dlpp/errors.hpp"
#include "json.hpp"

namespace dlpp {

using Json = nlohmann::ordered_json;

double plan_cost(const Instance& inst, const std::vector<int>& y) {
  const PairIndex pairs(inst);
  double cost = 0.0;
  for (PairSlot p = 0; p < pairs.size(); ++p) cost += inst.trailer_types[pairs[p].second].cost * y.at(p);
  return cost;
}

std::vector<double> sort_pair_capacity(const Instance& inst, const std::vector<int>& y) {
  const PairIndex pairs(inst);
  std::vector<double> cap(inst.sort_pairs.size(), 0.0);
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    cap[pairs[p].first] += inst.trailer_types[pairs[p].second].capacity * y.at(p);
  }
  return cap;
}

std::optional<std::string> find_violation(const Instance& inst, const LoadPlan& plan, double tol) {
  const PairIndex pairs(inst);
  if (plan.y.size() != pairs.size()) {
    return "plan has " + std::to_string(plan.y.size()) + " trailer slots, instance has " +
           std::to_string(pairs.size());
  }
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    if (plan.y[p] < 0) return "negative trailer count on slot " + std::to_string(p);
  }
  std::vector<double> assigned(inst.commodities.size(), 0.0);
  std::vector<double> load(pairs.size(), 0.0);
  for (const auto& f : plan.x) {
    if (f.commodity >= inst.commodities.size()) return "flow references unknown commodity";
    const auto& c = inst.commodities[f.commodity];
    if (!c.is_compatible(f.sort_pair)) {
      return "commodity " + c.id + " routed on incompatible sort pair " +
             inst.sort_pairs.at(f.sort_pair).id;
    }
    auto slot = pairs.find(f.sort_pair, f.trailer);
    if (!slot) {
      return "trailer type " + inst.trailer_types.at(f.trailer).id + " not allowed on " +
             inst.sort_pairs[f.sort_pair].id;
    }
    if (f.volume < -tol) return "negative volume for commodity " + c.id;
    assigned[f.commodity] += f.volume;
    load[*slot] += f.volume;
  }
  for (CommodityIndex k = 0; k < inst.commodities.size(); ++k) {
    const double q = inst.commodities[k].volume;
    if (std::abs(assigned[k] - q) > tol * (1.0 + q)) {
      std::ostringstream msg;
      msg << "flow conservation violated for commodity " << inst.commodities[k].id << ": assigned "
          << assigned[k] << " of " << q;
      return msg.str();
    }
  }
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    const auto [s, v] = pairs[p];
    const double cap = inst.trailer_types[v].capacity * plan.y[p];
    if (load[p] > cap + tol * (1.0 + cap)) {
      std::ostringstream msg;
      msg << "capacity violated on (" << inst.sort_pairs[s].id << ", " << inst.trailer_types[v].id
          << "): load " << load[p] << " > capacity " << cap;
      return msg.str();
    }
  }
  return std::nullopt;
}

void require_feasible(const Instance& inst, const LoadPlan& plan, double tol) {
  if (auto v = find_violation(inst, plan, tol)) throw InfeasiblePlan(*v);
}

std::vector<int> reference_counts(const Instance& inst) {
  const PairIndex pairs(inst);
  std::vector<int> gamma(pairs.size(), 0);
  if (!inst.reference_plan) return gamma;
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    gamma[p] = inst.reference_plan->count(pairs[p].first, pairs[p].second);
  }
  return gamma;
}

double hamming_distance(const Instance& inst, const std::vector<int>& y) {
  const std::vector<int> gamma = reference_counts(inst);
  double d = 0.0;
  for (std::size_t p = 0; p < gamma.size(); ++p) d += std::abs(y.at(p) - gamma[p]);
  return d;
}

double diversion_total(const Instance& inst, const LoadPlan& plan) {
  double total = 0.0;
  for (const auto& f : plan.x) total += diversion_cost(inst, f.commodity, f.sort_pair) * f.volume;
  return total;
}

std::vector<FlowEntry> split_over_trailers(const Instance& inst, const std::vector<int>& y,
                                           const std::vector<PairFlow>& flows) {
  const PairIndex pairs(inst);
  std::vector<double> room(pairs.size(), 0.0);
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    room[p] = inst.trailer_types[pairs[p].second].capacity * y.at(p);
  }
  std::vector<FlowEntry> out;
  for (const auto& f : flows) {
    double left = f.volume;
    if (left <= 0.0) continue;
    const auto slots = pairs.slots_of(f.sort_pair);
    for (std::size_t i = 0; i < slots.size() && left > 0.0; ++i) {
      const PairSlot p = slots[i];
      const bool last = i + 1 == slots.size();
      const double take = last ? left : std::min(left, room[p]);
      if (take <= 0.0) continue;
      room[p] -= take;
      left -= take;
      out.push_back({f.commodity, f.sort_pair, pairs[p].second, take});
    }
  }
  return out;
}

std::string plan_to_json(const Instance& inst, const LoadPlan& plan) {
  const PairIndex pairs(inst);
  Json doc;
  Json ys = Json::array();
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    ys.push_back(Json{{"sort_pair", inst.sort_pairs[pairs[p].first].id},
                      {"trailer_type", inst.trailer_types[pairs[p].second].id},
                      {"count", plan.y.at(p)}});
  }
  doc["y"] = std::move(ys);
  Json xs = Json::array();
  for (const auto& f : plan.x) {
    xs.push_back(Json{{"commodity", inst.commodities[f.commodity].id},
                      {"sort_pair", inst.sort_pairs[f.sort_pair].id},
                      {"trailer_type", inst.trailer_types[f.trailer].id},
                      {"volume", f.volume}});
  }
  doc["x"] = std::move(xs);
  doc["objective"] = plan.objective;
  return doc.dump(2) + "\n";
}

LoadPlan plan_from_json(const Instance& inst, const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed plan JSON: ") + e.what());
  }
  const PairIndex pairs(inst);
  LoadPlan plan;
  plan.y.assign(pairs.size(), 0);
  try {
    for (const auto& e : doc.at("y")) {
      auto s = inst.find_sort_pair(e.at("sort_pair").get<std::string>());
      auto v = inst.find_trailer(e.at("trailer_type").get<std::string>());
      if (!s || !v) throw ValidationError("y", "unknown sort pair or trailer type");
      auto slot = pairs.find(*s, *v);
      if (!slot) throw ValidationError("y", "incompatible (sort pair, trailer type)");
      plan.y[*slot] = e.at("count").get<int>();
    }
    for (const auto& e : doc.at("x")) {
      auto k = inst.find_commodity(e.at("commodity").get<std::string>());
      auto s = inst.find_sort_pair(e.at("sort_pair").get<std::string>());
      auto v = inst.find_trailer(e.at("trailer_type").get<std::string>());
      if (!k || !s || !v) throw ValidationError("x", "unknown id");
      plan.x.push_back({*k, *s, *v, e.at("volume").get<double>()});
    }
    plan.objective = doc.at("objective").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("$", e.what());
  }
  return plan;
}

}  // namespace dlpp
