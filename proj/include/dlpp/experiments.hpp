#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dlpp/datagen.hpp"
#include "dlpp/metrics.hpp"
#include "dlpp/proxy.hpp"

namespace dlpp {

/// Solver settings shared by evaluation runs and sweeps. Node limits by default
/// so plans (not timings) are reproducible.
struct ExperimentOptions {
  GdoOptions gdo = deterministic_gdo_options();
  MipOptions model1 = deterministic_gdo_options().stage1;
  MipOptions restore;
  std::size_t jobs = 1;
};

/// Methods understood by evaluate_split and run_sweep.
bool known_method(const std::string& method);

/// Training samples (volumes -> gridded label) of one split.
std::vector<Sample> samples_of(const Dataset& data, Split split);

struct SplitEvaluation {
  EvaluationReport report;
  /// Proxy rows only: share of final capacity that was predicted.
  std::vector<double> capacity_share;
  std::size_t skipped = 0;  // items whose labeling failed
};

/// Runs each method on every labeled item of `split`. Gaps are measured against
/// the stage-1 cost recorded at labeling time. `model` may be null unless
/// "proxy" is requested. Rows come out in item order, then method order.
SplitEvaluation evaluate_split(const Dataset& data, Split split, const std::vector<std::string>& methods,
                               const ProxyModel* model, const ExperimentOptions& options = {});

struct SweepResult {
  std::vector<std::string> methods;
  std::vector<double> scales;
  std::vector<double> total_volume;
  std::vector<std::vector<std::vector<int>>> plans;  // [method][step] slot counts
  std::vector<std::vector<double>> costs;            // [method][step]
  std::vector<std::vector<double>> times;            // [method][step]

  std::size_t method_index(const std::string& method) const;
  double total_variation(const std::string& method) const;
  /// Shifted geometric mean over the steps of the normalized distance to the reference plan.
  double distance_geomean(const Instance& ref, const std::string& method) const;
};

/// Solves every step of a linear volume sweep with each method.
SweepResult run_sweep(const Instance& ref, std::size_t steps, double from, double to,
                      const std::vector<std::string>& methods, const ProxyModel* model,
                      const ExperimentOptions& options = {});

/// One row per step: step,scale,total_volume then <method>_trailers,<method>_cost.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

}  // namespace dlpp
