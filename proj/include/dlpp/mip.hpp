#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dlpp/lp.hpp"

namespace dlpp {

struct MixedIntegerProgram {
  LinearProgram lp;
  std::vector<bool> integer;  // per column

  /// Marks column j integer. Binary columns additionally get bounds [0, 1].
  void mark_integer(std::size_t j);
  void mark_binary(std::size_t j);
  bool is_integer(std::size_t j) const { return j < integer.size() && integer[j]; }
  std::vector<std::size_t> integer_vars() const;
};

enum class MipStatus { Optimal, FeasibleTimeLimit, Infeasible, NoIncumbent };

const char* to_string(MipStatus status);

struct MipResult {
  MipStatus status = MipStatus::NoIncumbent;
  std::optional<std::vector<double>> incumbent;
  double objective = kInfinity;
  double best_bound = -kInfinity;
  std::size_t nodes_explored = 0;
  double wall_time = 0.0;  // seconds
  /// True when the search stopped on the node limit rather than the clock.
  bool node_limit_hit = false;

  bool has_incumbent() const { return incumbent.has_value(); }
};

struct MipOptions {
  double time_limit = 30.0;      // seconds, checked between nodes
  std::size_t node_limit = 0;    // 0 = unlimited; node limits keep runs reproducible
  double integrality_tol = 1e-5;
  double feasibility_tol = 1e-6;
  /// Try rounding the LP integers up and re-solving the continuous part at each node.
  bool round_up_heuristic = true;
  /// Optional starting incumbent (full column vector); ignored if infeasible.
  std::optional<std::vector<double>> warm_start;
  /// Called on every incumbent or bound improvement: (seconds, incumbent, bound).
  std::function<void(double, double, double)> on_progress;
};

/// Branch-and-bound over the simplex solver. Most-fractional branching (ties
/// by lowest index), best-bound node selection (ties: deeper first, then
/// FIFO). When every objective term sits on an integer column with
/// integer-multiple coefficients, node bounds are rounded up to that grid.
MipResult solve_mip(const MixedIntegerProgram& mip, const MipOptions& options = {});

/// Fixes the integer columns to `values` and solves the remaining LP.
std::optional<std::vector<double>> complete_with_fixed_integers(const MixedIntegerProgram& mip,
                                                                std::span<const double> values);

struct GapReport {
  double gap = 0.0;
  bool zero_reference = false;  // reference was 0; gap holds the absolute difference
  bool against_bound = false;   // reference run was not proven optimal; its bound was used
};

/// (candidate - Z*) / |Z*|.
double optimality_gap(double candidate, double reference);

/// Gap of `candidate` against a reference MIP run: its optimum when proven,
/// otherwise its best bound.
GapReport integrality_gap_report(const MipResult& reference_run, double candidate);
GapReport integrality_gap_report(double candidate, double reference);

/// Writes the CSV header used by solve logs ("time,incumbent,bound").
void write_solve_log_header(std::ostream& out);
/// Progress callback that appends one CSV line per improvement.
std::function<void(double, double, double)> csv_solve_logger(std::ostream& out);

}  // namespace dlpp
