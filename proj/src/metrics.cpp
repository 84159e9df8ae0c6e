#include "dlpp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "dlpp/errors.hpp"
#include "dlpp/mip.hpp"
#include "json.hpp"

namespace dlpp {

double shifted_geomean(const std::vector<double>& xs, double shift) {
  if (xs.empty()) throw EmptyDomain("shifted geometric mean of an empty set");
  double acc = 0.0;
  for (double x : xs) {
    if (!(x + shift > 0.0)) throw NonpositiveShifted("value " + std::to_string(x) + " plus shift is not positive");
    acc += std::log(x + shift);
  }
  // exp/log round trips are not exact; a constant sample is its own mean.
  if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) return xs.front();
  return std::exp(acc / static_cast<double>(xs.size())) - shift;
}

double normalized_distance(const std::vector<double>& y, const std::vector<double>& gamma) {
  if (y.size() != gamma.size()) throw DimensionMismatch("plan and reference differ in length");
  std::vector<double> dev(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = std::abs(y[i] - gamma[i]);
    dev[i] = gamma[i] == 0.0 ? d : d / gamma[i];
  }
  return shifted_geomean(dev, kDistanceShift);
}

double normalized_distance(const Instance& inst, const std::vector<int>& y, DistanceDomain domain) {
  const PairIndex pairs(inst);
  if (y.size() != pairs.size()) throw DimensionMismatch("plan has the wrong number of slots");
  const std::vector<int> gamma = reference_counts(inst);
  std::vector<double> yy(y.begin(), y.end());
  std::vector<double> gg(gamma.begin(), gamma.end());
  if (domain == DistanceDomain::FullGrid) {
    yy.resize(pairs.grid_size(), 0.0);
    gg.resize(pairs.grid_size(), 0.0);
  }
  return normalized_distance(yy, gg);
}

TotalVariation total_variation(const std::vector<std::vector<double>>& plans) {
  TotalVariation tv;
  if (plans.size() < 2) {
    tv.fewer_than_two = true;
    return tv;
  }
  for (std::size_t i = 1; i < plans.size(); ++i) {
    if (plans[i].size() != plans[i - 1].size()) throw DimensionMismatch("plans differ in length");
    double sq = 0.0;
    for (std::size_t j = 0; j < plans[i].size(); ++j) {
      const double d = plans[i][j] - plans[i - 1][j];
      sq += d * d;
    }
    tv.value += std::sqrt(sq);
  }
  return tv;
}

TotalVariation total_variation(const std::vector<std::vector<int>>& plans) {
  std::vector<std::vector<double>> as_double;
  as_double.reserve(plans.size());
  for (const auto& p : plans) as_double.emplace_back(p.begin(), p.end());
  return total_variation(as_double);
}

std::vector<EvaluationRow> evaluate(const Instance& inst, const std::string& instance_name,
                                    const std::vector<MethodOutcome>& outcomes, double reference_cost,
                                    DistanceDomain domain) {
  std::vector<EvaluationRow> rows;
  for (const auto& o : outcomes) {
    if (auto v = find_violation(inst, o.plan)) throw InfeasiblePlan(o.method + ": " + *v);
    EvaluationRow r;
    r.instance = instance_name;
    r.method = o.method;
    r.cost = plan_cost(inst, o.plan.y);
    const GapReport g = integrality_gap_report(r.cost, reference_cost);
    r.gap = g.gap;
    r.gap_zero_reference = g.zero_reference;
    if (inst.reference_plan) {
      r.distance = normalized_distance(inst, o.plan.y, domain);
      r.hamming = hamming_distance(inst, o.plan.y);
    }
    r.wall_time = o.wall_time;
    for (int y : o.plan.y) r.trailers += y;
    rows.push_back(std::move(r));
  }
  return rows;
}

void EvaluationReport::summarize() {
  std::map<std::string, std::vector<const EvaluationRow*>> by_method;
  for (const auto& r : rows) by_method[r.method].push_back(&r);
  summary.clear();
  for (const auto& [method, list] : by_method) {
    std::vector<double> gap, dist, time;
    for (const auto* r : list) {
      // Tiny negative gaps come from solver tolerance against a bound.
      gap.push_back(std::max(r->gap, 0.0));
      dist.push_back(r->distance);
      time.push_back(r->wall_time);
    }
    MethodSummary s;
    s.count = list.size();
    s.gap_geomean = shifted_geomean(gap, kGapShift);
    s.distance_geomean = shifted_geomean(dist, kDistanceShift);
    s.time_geomean = shifted_geomean(time, kTimeShift);
    summary[method] = s;
  }
}

void write_report_csv(std::ostream& out, const EvaluationReport& report) {
  out << "instance,method,cost,gap,distance,hamming,trailers,wall_time\n";
  for (const auto& r : report.rows) {
    out << r.instance << ',' << r.method << ',' << r.cost << ',' << r.gap << ',' << r.distance << ','
        << r.hamming << ',' << r.trailers << ',' << r.wall_time << '\n';
  }
}

std::string report_summary_json(const EvaluationReport& report) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [method, s] : report.summary) {
    doc[method] = {{"instances", s.count},
                   {"gap_geomean", s.gap_geomean},
                   {"distance_geomean", s.distance_geomean},
                   {"time_geomean", s.time_geomean}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace dlpp
