#include "dlpp/greedy.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "dlpp/errors.hpp"
#include "dlpp/formulations.hpp"

namespace dlpp {

bool within_integrality(double value, double tol) { return std::abs(value - std::round(value)) <= tol; }

std::optional<std::size_t> select_lift(std::span<const double> values, double tol) {
  std::optional<std::size_t> best;
  double best_gap = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (within_integrality(values[i], tol)) continue;
    const double gap = std::ceil(values[i]) - values[i];
    if (!best || gap < best_gap) {
      best = i;
      best_gap = gap;
    }
  }
  return best;
}

GreedyResult greedy_solve(const Instance& inst, const GreedyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const DlppModel model = build_model1(inst);
  const LinearProgram& lp = model.mip.lp;
  const std::size_t nslots = model.index.y.size();

  std::size_t max_iters = options.max_iters;
  if (max_iters == 0) {
    max_iters = 1;
    for (std::size_t col : model.index.y) max_iters += static_cast<std::size_t>(lp.upper[col]);
  }

  std::vector<double> lower = lp.lower;
  const std::vector<double>& upper = lp.upper;
  GreedyResult result;
  std::vector<double> y(nslots);
  LpSolution sol;
  while (true) {
    if (result.iterations >= max_iters) {
      throw IterationLimit("greedy did not reach an integral solution in " + std::to_string(max_iters) +
                           " iterations");
    }
    sol = solve_lp(lp, lower, upper);
    ++result.iterations;
    if (sol.status != LpStatus::Optimal) {
      throw NumericalFailure(std::string("greedy LP ended with status ") + to_string(sol.status));
    }
    for (std::size_t p = 0; p < nslots; ++p) y[p] = sol.primal[model.index.y[p]];
    GreedyStep step;
    step.iteration = result.iterations;
    step.lp_objective = sol.objective_value;
    const auto pick = select_lift(y, options.integrality_tol);
    if (!pick) {
      result.trace.push_back(step);
      break;
    }
    const std::size_t col = model.index.y[*pick];
    step.lifted = *pick;
    step.new_lower = std::ceil(y[*pick]);
    lower[col] = step.new_lower;
    result.trace.push_back(step);
  }

  // Snap the counts and redo the flows for the rounded capacities.
  std::vector<double> fixed = sol.primal;
  for (std::size_t col : model.index.y) fixed[col] = std::round(fixed[col]);
  if (auto completed = complete_with_fixed_integers(model.mip, fixed)) {
    result.plan = extract_plan(inst, model.index, *completed);
  } else {
    for (std::size_t col : model.index.y) fixed[col] = std::ceil(sol.primal[col] - 1e-9);
    auto again = complete_with_fixed_integers(model.mip, fixed);
    if (!again) throw NumericalFailure("greedy could not recover flows for its integral counts");
    result.plan = extract_plan(inst, model.index, *again);
  }
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_greedy_trace(std::ostream& out, const GreedyResult& result) {
  out << "iteration,lifted_slot,new_lower,lp_objective\n";
  for (const auto& s : result.trace) {
    out << s.iteration << ',';
    if (s.lifted) out << *s.lifted;
    out << ',';
    if (s.lifted) out << s.new_lower;
    out << ',' << s.lp_objective << '\n';
  }
}

}  // namespace dlpp
