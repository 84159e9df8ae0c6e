#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlpp/network.hpp"
#include "dlpp/plan.hpp"

namespace dlpp {

inline constexpr double kDistanceShift = 0.01;
inline constexpr double kGapShift = 0.01;
inline constexpr double kTimeShift = 1.0;

/// exp(mean(log(x + shift))) - shift. Throws NonpositiveShifted, EmptyDomain.
double shifted_geomean(const std::vector<double>& xs, double shift);

/// Per-entry relative deviation |y - g| / g (or |y - g| when g = 0),
/// aggregated with a shifted geometric mean (shift 0.01).
/// Throws DimensionMismatch or EmptyDomain.
double normalized_distance(const std::vector<double>& y, const std::vector<double>& gamma);

enum class DistanceDomain {
  Compatible,  // only (s, v) slots where trailers may run
  FullGrid,    // all |S| x |V| combinations; incompatible ones count as zero deviation
};

/// Normalized distance of slot-indexed counts to the instance's reference plan.
double normalized_distance(const Instance& inst, const std::vector<int>& y,
                           DistanceDomain domain = DistanceDomain::Compatible);

struct TotalVariation {
  double value = 0.0;
  bool fewer_than_two = false;
};

/// Sum of Euclidean steps between consecutive count vectors.
TotalVariation total_variation(const std::vector<std::vector<double>>& plans);
TotalVariation total_variation(const std::vector<std::vector<int>>& plans);

struct MethodOutcome {
  std::string method;
  LoadPlan plan;
  double wall_time = 0.0;
};

struct EvaluationRow {
  std::string instance;
  std::string method;
  double cost = 0.0;
  double gap = 0.0;
  bool gap_zero_reference = false;
  double distance = 0.0;
  double hamming = 0.0;
  double wall_time = 0.0;
  int trailers = 0;
};

struct MethodSummary {
  std::size_t count = 0;
  double gap_geomean = 0.0;
  double distance_geomean = 0.0;
  double time_geomean = 0.0;
};

struct EvaluationReport {
  std::vector<EvaluationRow> rows;
  std::map<std::string, MethodSummary> summary;

  /// Recomputes the geometric-mean summary from the rows.
  void summarize();
};

/// Scores each method's plan on one instance: gap against `reference_cost`
/// (usually the cost optimum or its bound), distance to the reference plan, time.
/// Throws InfeasiblePlan naming the violated constraint.
std::vector<EvaluationRow> evaluate(const Instance& inst, const std::string& instance_name,
                                    const std::vector<MethodOutcome>& outcomes, double reference_cost,
                                    DistanceDomain domain = DistanceDomain::Compatible);

void write_report_csv(std::ostream& out, const EvaluationReport& report);
std::string report_summary_json(const EvaluationReport& report);

}  // namespace dlpp
