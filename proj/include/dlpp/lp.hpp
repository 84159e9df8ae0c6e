#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dlpp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, Equal, GreaterEqual };

struct SparseEntry {
  std::size_t index = 0;
  double value = 0.0;
};

struct Row {
  std::vector<SparseEntry> coeffs;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
  std::string name;
};

/// min c'x  s.t.  rows,  lower <= x <= upper.  Lower bounds must be finite.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> names;
  std::vector<Row> rows;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  std::size_t add_variable(double cost, double lb = 0.0, double ub = kInfinity,
                           std::string name = {});
  std::size_t add_row(std::vector<SparseEntry> coeffs, RowSense sense, double rhs,
                      std::string name = {});

  /// Throws std::invalid_argument on NaN data, dangling columns or infinite lower bounds.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

/// Final simplex basis over structurals then one slack per row. Lets a
/// related solve (same rows, tightened bounds) restart with the dual simplex.
struct LpBasis {
  std::vector<std::size_t> head;  // basic column per row
  std::vector<bool> at_upper;     // per column, for nonbasic ones
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective_value = 0.0;
  std::vector<double> primal;
  std::vector<double> duals;           // one per row
  std::vector<double> reduced_costs;   // one per column
  std::size_t iterations = 0;
  std::optional<LpBasis> basis;        // set when optimal
};

struct LpOptions {
  double feasibility_tol = 1e-6;
  double optimality_tol = 1e-7;
  double pivot_tol = 1e-9;
  std::size_t refactor_interval = 100;
  /// Start in Bland mode instead of switching after stalling.
  bool bland_only = false;
};

/// Bounded primal revised simplex: Dantzig pricing, switching to Bland's rule
/// after 10 * (rows + cols) consecutive degenerate pivots. Deterministic.
/// Throws NumericalFailure on a singular basis or iteration blow-up.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

/// Same model with bounds overridden (used by branch-and-bound nodes).
LpSolution solve_lp(const LinearProgram& lp, std::span<const double> lower,
                    std::span<const double> upper, const LpOptions& options = {});

/// Restarts from `start` (a basis of the same rows): dual simplex until primal
/// feasible, then primal simplex. Falls back to a cold solve when the basis
/// is unusable, so the result never depends on it beyond tie-breaking.
LpSolution solve_lp(const LinearProgram& lp, std::span<const double> lower,
                    std::span<const double> upper, const LpBasis& start,
                    const LpOptions& options = {});
/// Returns a copy with var's lower bound raised to new_lb.
/// Throws BoundCrossing if new_lb exceeds the upper bound and
/// std::invalid_argument if new_lb would loosen the bound.
LinearProgram update_lower_bound(const LinearProgram& lp, std::size_t var, double new_lb);

/// Largest row violation of x scaled by 1 + |rhs|, and bound violations.
double max_violation(const LinearProgram& lp, std::span<const double> x);

/// Writes the model in CPLEX LP text format.
void write_lp_format(const LinearProgram& lp, std::ostream& out);

}  // namespace dlpp
