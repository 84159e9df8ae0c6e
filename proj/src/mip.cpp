#include "dlpp/mip.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <stdexcept>

#include "dlpp/errors.hpp"

namespace dlpp {

void MixedIntegerProgram::mark_integer(std::size_t j) {
  if (integer.size() < lp.num_vars()) integer.resize(lp.num_vars(), false);
  integer.at(j) = true;
}

void MixedIntegerProgram::mark_binary(std::size_t j) {
  mark_integer(j);
  lp.lower[j] = std::max(0.0, lp.lower[j]);
  lp.upper[j] = std::min(1.0, lp.upper[j]);
}

std::vector<std::size_t> MixedIntegerProgram::integer_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < integer.size(); ++j) {
    if (integer[j]) out.push_back(j);
  }
  return out;
}

const char* to_string(MipStatus status) {
  switch (status) {
    case MipStatus::Optimal: return "Optimal";
    case MipStatus::FeasibleTimeLimit: return "FeasibleTimeLimit";
    case MipStatus::Infeasible: return "Infeasible";
    case MipStatus::NoIncumbent: return "NoIncumbent";
  }
  return "NoIncumbent";
}

namespace {

std::optional<std::vector<double>> complete_fixed(const MixedIntegerProgram& mip, std::span<const double> values,
                                                  const LpBasis* basis) {
  std::vector<double> lower = mip.lp.lower;
  std::vector<double> upper = mip.lp.upper;
  for (std::size_t j = 0; j < mip.lp.num_vars(); ++j) {
    if (!mip.is_integer(j)) continue;
    const double v = std::round(values[j]);
    if (v < lower[j] - 1e-9 || v > upper[j] + 1e-9) return std::nullopt;
    lower[j] = upper[j] = v;
  }
  LpSolution sol = basis ? solve_lp(mip.lp, lower, upper, *basis) : solve_lp(mip.lp, lower, upper);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  return std::move(sol.primal);
}

}  // namespace

std::optional<std::vector<double>> complete_with_fixed_integers(const MixedIntegerProgram& mip,
                                                                std::span<const double> values) {
  return complete_fixed(mip, values, nullptr);
}

namespace {

struct BoundChange {
  std::size_t var;
  double lower;
  double upper;
};

struct Node {
  double bound;
  std::size_t depth;
  std::size_t seq;
  std::vector<BoundChange> changes;
  std::shared_ptr<const LpBasis> basis;  // parent's optimal basis
};

struct NodeOrder {
  // priority_queue keeps the "largest" on top, so invert each comparison.
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  }
};

/// Spacing of attainable objective values, or 0 when it cannot be inferred.
double objective_grid(const MixedIntegerProgram& mip) {
  long long g = 0;
  bool any = false;
  for (std::size_t j = 0; j < mip.lp.num_vars(); ++j) {
    const double c = mip.lp.objective[j];
    if (c == 0.0) continue;
    if (!mip.is_integer(j)) return 0.0;
    if (std::abs(c - std::round(c)) > 1e-9 || std::abs(c) > 1e12) return 0.0;
    g = std::gcd(g, std::llabs(static_cast<long long>(std::llround(c))));
    any = true;
  }
  return any ? static_cast<double>(g) : 0.0;
}

double objective_of(const LinearProgram& lp, std::span<const double> x) {
  double v = 0.0;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) v += lp.objective[j] * x[j];
  return v;
}

}  // namespace

MipResult solve_mip(const MixedIntegerProgram& mip, const MipOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  if (!(options.time_limit > 0.0)) throw std::invalid_argument("time limit must be positive");
  mip.lp.validate();
  const std::size_t n = mip.lp.num_vars();
  const double grid = objective_grid(mip);
  auto round_bound = [&](double value) {
    if (grid <= 0.0) return value;
    return std::ceil(value / grid - 1e-6) * grid;
  };

  MipResult result;
  auto tolerance = [&] {
    return std::isfinite(result.objective) ? 1e-7 + 1e-9 * std::abs(result.objective) : 0.0;
  };
  auto report = [&] {
    if (options.on_progress) options.on_progress(elapsed(), result.objective, result.best_bound);
  };
  auto is_integral = [&](std::span<const double> x) {
    for (std::size_t j = 0; j < n; ++j) {
      if (mip.is_integer(j) && std::abs(x[j] - std::round(x[j])) > options.integrality_tol) {
        return false;
      }
    }
    return true;
  };
  auto offer = [&](std::vector<double> x) {
    const double obj = objective_of(mip.lp, x);
    if (obj < result.objective - tolerance()) {
      result.objective = obj;
      result.incumbent = std::move(x);
      report();
    }
  };

  if (options.warm_start && options.warm_start->size() == n && is_integral(*options.warm_start) &&
      max_violation(mip.lp, *options.warm_start) <= options.feasibility_tol) {
    offer(*options.warm_start);
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::size_t seq = 0;
  open.push(Node{-kInfinity, 0, seq++, {}, nullptr});
  std::set<std::vector<long long>> tried_roundings;

  std::vector<double> lower(n), upper(n);
  bool stopped = false;

  while (!open.empty()) {
    if (elapsed() >= options.time_limit ||
        (options.node_limit > 0 && result.nodes_explored >= options.node_limit)) {
      stopped = true;
      result.node_limit_hit = elapsed() < options.time_limit;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= result.objective - tolerance()) continue;
    if (node.bound > result.best_bound) {
      result.best_bound = node.bound;
      report();
    }

    lower = mip.lp.lower;
    upper = mip.lp.upper;
    for (const auto& c : node.changes) {
      lower[c.var] = c.lower;
      upper[c.var] = c.upper;
    }
    LpSolution relax = node.basis ? solve_lp(mip.lp, lower, upper, *node.basis) : solve_lp(mip.lp, lower, upper);
    ++result.nodes_explored;
    if (relax.status == LpStatus::Infeasible) continue;
    if (relax.status == LpStatus::Unbounded) {
      throw NumericalFailure("unbounded LP relaxation in branch-and-bound");
    }
    const double node_value = round_bound(relax.objective_value);
    if (node_value >= result.objective - tolerance()) continue;

    std::size_t branch_var = n;
    double best_frac = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!mip.is_integer(j)) continue;
      const double x = relax.primal[j];
      const double dist = std::abs(x - std::round(x));
      if (dist > options.integrality_tol && dist > best_frac) {
        best_frac = dist;
        branch_var = j;
      }
    }

    if (branch_var == n) {
      // Integral relaxation: snap the integers and re-solve the continuous part.
      if (auto snapped = complete_fixed(mip, relax.primal, relax.basis ? &*relax.basis : nullptr)) {
        offer(std::move(*snapped));
      } else {
        offer(std::move(relax.primal));
      }
      continue;
    }

    if (options.round_up_heuristic) {
      // Invented incumbent heuristic: round integers up and repair the continuous part.
      std::vector<double> rounded = relax.primal;
      std::vector<long long> key;
      for (std::size_t j = 0; j < n; ++j) {
        if (!mip.is_integer(j)) continue;
        double v = std::ceil(rounded[j] - options.integrality_tol);
        v = std::clamp(v, mip.lp.lower[j], mip.lp.upper[j]);
        rounded[j] = v;
        key.push_back(std::llround(v));
      }
      if (tried_roundings.insert(std::move(key)).second) {
        if (auto completed = complete_fixed(mip, rounded, relax.basis ? &*relax.basis : nullptr)) {
          offer(std::move(*completed));
        }
      }
    }

    const double x = relax.primal[branch_var];
    std::shared_ptr<const LpBasis> basis;
    if (relax.basis) basis = std::make_shared<const LpBasis>(std::move(*relax.basis));
    Node down{node_value, node.depth + 1, seq++, node.changes, basis};
    down.changes.push_back({branch_var, lower[branch_var], std::floor(x)});
    Node up{node_value, node.depth + 1, seq++, std::move(node.changes), basis};
    up.changes.push_back({branch_var, std::ceil(x), upper[branch_var]});
    if (node_value < result.objective - tolerance()) {
      open.push(std::move(down));
      open.push(std::move(up));
    }
  }

  result.wall_time = elapsed();
  if (stopped && !open.empty() && open.top().bound >= result.objective - tolerance()) stopped = false;
  if (!stopped || open.empty()) {
    if (result.incumbent) {
      result.status = MipStatus::Optimal;
      result.best_bound = result.objective;
    } else {
      result.status = MipStatus::Infeasible;
    }
    return result;
  }
  double open_bound = open.top().bound;
  result.best_bound = std::max(result.best_bound, std::min(open_bound, result.objective));
  result.status = result.incumbent ? MipStatus::FeasibleTimeLimit : MipStatus::NoIncumbent;
  return result;
}

double optimality_gap(double candidate, double reference) {
  return (candidate - reference) / std::abs(reference);
}

GapReport integrality_gap_report(double candidate, double reference) {
  GapReport report;
  if (std::abs(reference) < 1e-12) {
    report.zero_reference = true;
    report.gap = std::abs(candidate - reference);
    return report;
  }
  report.gap = optimality_gap(candidate, reference);
  return report;
}

GapReport integrality_gap_report(const MipResult& reference_run, double candidate) {
  const bool proven = reference_run.status == MipStatus::Optimal;
  GapReport report =
      integrality_gap_report(candidate, proven ? reference_run.objective : reference_run.best_bound);
  report.against_bound = !proven;
  return report;
}

void write_solve_log_header(std::ostream& out) { out << "time,incumbent,bound\n"; }

std::function<void(double, double, double)> csv_solve_logger(std::ostream& out) {
  return [&out](double t, double incumbent, double bound) {
    out << t << ',' << incumbent << ',' << bound << '\n';
  };
}

}  // namespace dlpp
