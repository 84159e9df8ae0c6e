#include "dlpp/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "dlpp/errors.hpp"

namespace dlpp {

std::size_t LinearProgram::add_variable(double cost, double lb, double ub, std::string name) {
  objective.push_back(cost);
  lower.push_back(lb);
  upper.push_back(ub);
  names.push_back(std::move(name));
  return objective.size() - 1;
}

std::size_t LinearProgram::add_row(std::vector<SparseEntry> coeffs, RowSense sense, double rhs,
                                   std::string name) {
  rows.push_back(Row{std::move(coeffs), sense, rhs, std::move(name)});
  return rows.size() - 1;
}

void LinearProgram::validate() const {
  const std::size_t n = num_vars();
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("bound vectors do not match the number of variables");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(objective[j])) throw std::invalid_argument("NaN objective coefficient");
    if (!std::isfinite(lower[j])) throw std::invalid_argument("lower bounds must be finite");
    if (std::isnan(upper[j])) throw std::invalid_argument("NaN upper bound");
  }
  for (const auto& row : rows) {
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("non-finite right-hand side");
    for (const auto& e : row.coeffs) {
      if (e.index >= n) throw std::invalid_argument("row references an unknown column");
      if (!std::isfinite(e.value)) throw std::invalid_argument("non-finite row coefficient");
    }
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "Infeasible";
}

namespace {

enum class Outcome { Optimal, Unbounded };

struct ColumnEntry {
  std::size_t row;
  double value;
};

/// Working state of one solve. Columns: structurals, then one slack per row,
/// then the artificials added for rows whose slack cannot start basic.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, std::span<const double> lower, std::span<const double> upper,
          const LpOptions& options)
      : lp_(lp), opt_(options), n_(lp.num_vars()) {
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      if (!lp.rows[i].coeffs.empty()) active_rows_.push_back(i);
    }
    m_ = active_rows_.size();

    cols_.resize(n_);
    for (std::size_t r = 0; r < m_; ++r) {
      for (const auto& e : lp.rows[active_rows_[r]].coeffs) {
        if (e.value != 0.0) cols_[e.index].push_back({r, e.value});
      }
    }
    lo_.assign(lower.begin(), lower.end());
    up_.assign(upper.begin(), upper.end());
    cost_.assign(lp.objective.begin(), lp.objective.end());
    b_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) b_[r] = lp.rows[active_rows_[r]].rhs;
  }

  LpSolution run() {
    LpSolution sol = empty_solution();
    if (!trivially_feasible()) return infeasible(sol);

    build_initial_basis();
    bool has_artificials = num_artificials_ > 0;
    if (has_artificials) {
      std::vector<double> phase1(cols_.size(), 0.0);
      for (std::size_t j = n_ + m_; j < cols_.size(); ++j) phase1[j] = 1.0;
      const Outcome out = iterate(phase1);
      (void)out;  // phase 1 is bounded below by zero
      double infeas = 0.0;
      for (std::size_t j = n_ + m_; j < cols_.size(); ++j) infeas += x_[j];
      double scale = 1.0;
      for (double v : b_) scale = std::max(scale, std::abs(v));
      if (infeas > opt_.feasibility_tol * scale) {
        sol.iterations = iterations_;
        return infeasible(sol);
      }
      for (std::size_t j = n_ + m_; j < cols_.size(); ++j) {
        lo_[j] = 0.0;
        up_[j] = 0.0;
        if (pos_[j] < 0) x_[j] = 0.0;
      }
    }

    std::vector<double> phase2(cols_.size(), 0.0);
    std::copy(cost_.begin(), cost_.end(), phase2.begin());
    finish(sol, phase2);
    return sol;
  }

  /// Dual simplex from a previous basis; nullopt means "solve cold instead".
  std::optional<LpSolution> run_warm(const LpBasis& start) {
    LpSolution sol = empty_solution();
    if (!trivially_feasible()) return infeasible(sol);
    const std::size_t total = n_ + m_;
    if (start.head.size() != m_ || start.at_upper.size() != total) return std::nullopt;

    add_slacks();
    x_.assign(total, 0.0);
    pos_.assign(total, -1);
    head_ = start.head;
    for (std::size_t r = 0; r < m_; ++r) {
      if (head_[r] >= total || pos_[head_[r]] >= 0) return std::nullopt;
      pos_[head_[r]] = static_cast<long>(r);
    }
    at_upper_.assign(total, false);
    for (std::size_t j = 0; j < total; ++j) {
      if (pos_[j] >= 0) continue;
      at_upper_[j] = start.at_upper[j] && std::isfinite(up_[j]);
      x_[j] = at_upper_[j] ? up_[j] : lo_[j];
    }
    binv_.assign(m_ * m_, 0.0);
    try {
      refactor();
    } catch (const NumericalFailure&) {
      return std::nullopt;
    }

    std::vector<double> phase2(total, 0.0);
    std::copy(cost_.begin(), cost_.end(), phase2.begin());
    // Put each nonbasic column on the bound its reduced cost prefers.
    const std::vector<double> pi = duals(phase2);
    bool flipped = false;
    for (std::size_t j = 0; j < total; ++j) {
      if (pos_[j] >= 0 || up_[j] - lo_[j] <= 0.0) continue;
      const double d = reduced_cost(phase2, pi, j);
      if (!at_upper_[j] && d < -opt_.optimality_tol) {
        if (!std::isfinite(up_[j])) return std::nullopt;
        at_upper_[j] = true;
        x_[j] = up_[j];
        flipped = true;
      } else if (at_upper_[j] && d > opt_.optimality_tol) {
        at_upper_[j] = false;
        x_[j] = lo_[j];
        flipped = true;
      }
    }
    if (flipped) refactor();

    switch (dual_iterate(phase2)) {
      case DualOutcome::Feasible: break;
      case DualOutcome::Infeasible:
        sol.iterations = iterations_;
        return infeasible(sol);
      case DualOutcome::GiveUp: return std::nullopt;
    }
    finish(sol, phase2);
    return sol;
  }

 private:
  enum class DualOutcome { Feasible, Infeasible, GiveUp };

  LpSolution empty_solution() const {
    LpSolution sol;
    sol.primal.assign(n_, 0.0);
    sol.duals.assign(lp_.num_rows(), 0.0);
    sol.reduced_costs.assign(n_, 0.0);
    return sol;
  }

  bool trivially_feasible() const {
    for (std::size_t j = 0; j < n_; ++j) {
      if (lo_[j] > up_[j] + opt_.feasibility_tol) return false;
    }
    for (const Row& row : lp_.rows) {
      if (!row.coeffs.empty()) continue;
      const double tol = opt_.feasibility_tol * (1.0 + std::abs(row.rhs));
      const bool ok = (row.sense == RowSense::LessEqual && 0.0 <= row.rhs + tol) ||
                      (row.sense == RowSense::GreaterEqual && 0.0 >= row.rhs - tol) ||
                      (row.sense == RowSense::Equal && std::abs(row.rhs) <= tol);
      if (!ok) return false;
    }
    return true;
  }

  double reduced_cost(const std::vector<double>& cost, const std::vector<double>& pi, std::size_t j) const {
    double d = cost[j];
    for (const auto& e : cols_[j]) d -= pi[e.row] * e.value;
    return d;
  }

  void finish(LpSolution& sol, const std::vector<double>& phase2) {
    const Outcome out = iterate(phase2);
    sol.iterations = iterations_;
    if (out == Outcome::Unbounded) {
      sol.status = LpStatus::Unbounded;
      return;
    }

    sol.status = LpStatus::Optimal;
    for (std::size_t j = 0; j < n_; ++j) {
      // Snap nonbasic values onto their bounds and clip basic drift.
      double v = x_[j];
      if (v < lo_[j]) v = lo_[j];
      if (v > up_[j]) v = up_[j];
      sol.primal[j] = v;
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < n_; ++j) obj += cost_[j] * sol.primal[j];
    sol.objective_value = obj;

    const std::vector<double> pi = duals(phase2);
    for (std::size_t r = 0; r < m_; ++r) sol.duals[active_rows_[r]] = pi[r];
    for (std::size_t j = 0; j < n_; ++j) {
      double d = cost_[j];
      for (const auto& e : cols_[j]) d -= pi[e.row] * e.value;
      sol.reduced_costs[j] = d;
    }

    LpBasis basis;
    basis.head.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      // A leftover artificial is a multiple of its row's slack column.
      const std::size_t c = head_[r];
      basis.head[r] = c < n_ + m_ ? c : n_ + cols_[c].front().row;
    }
    basis.at_upper.assign(at_upper_.begin(), at_upper_.begin() + static_cast<long>(n_ + m_));
    sol.basis = std::move(basis);
  }

  LpSolution& infeasible(LpSolution& sol) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }

  void add_slacks() {
    const std::size_t total = n_ + m_;
    cols_.resize(total);
    lo_.resize(total);
    up_.resize(total);
    for (std::size_t r = 0; r < m_; ++r) {
      const RowSense sense = lp_.rows[active_rows_[r]].sense;
      const std::size_t slack = n_ + r;
      cols_[slack] = {{r, sense == RowSense::GreaterEqual ? -1.0 : 1.0}};
      lo_[slack] = 0.0;
      up_[slack] = sense == RowSense::Equal ? 0.0 : kInfinity;
    }
  }

  void build_initial_basis() {
    const std::size_t total = n_ + m_;
    add_slacks();
    x_.assign(total, 0.0);
    for (std::size_t j = 0; j < n_; ++j) x_[j] = lo_[j];

    std::vector<double> residual = b_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (x_[j] == 0.0) continue;
      for (const auto& e : cols_[j]) residual[e.row] -= e.value * x_[j];
    }

    head_.assign(m_, 0);
    std::vector<double> diag(m_, 1.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const RowSense sense = lp_.rows[active_rows_[r]].sense;
      const std::size_t slack = n_ + r;
      const double sign = sense == RowSense::GreaterEqual ? -1.0 : 1.0;
      const double value = residual[r] * sign;  // slack value if it starts basic
      const bool slack_ok = sense != RowSense::Equal && value >= 0.0;
      if (slack_ok) {
        head_[r] = slack;
        x_[slack] = value;
        diag[r] = sign;
      } else {
        const std::size_t art = cols_.size();
        const double asign = residual[r] >= 0.0 ? 1.0 : -1.0;
        cols_.push_back({{r, asign}});
        lo_.push_back(0.0);
        up_.push_back(kInfinity);
        x_.push_back(std::abs(residual[r]));
        head_[r] = art;
        diag[r] = asign;
        ++num_artificials_;
      }
    }
    pos_.assign(cols_.size(), -1);
    for (std::size_t r = 0; r < m_; ++r) pos_[head_[r]] = static_cast<long>(r);
    at_upper_.assign(cols_.size(), false);

    binv_.assign(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) binv_[r * m_ + r] = 1.0 / diag[r];
    since_refactor_ = 0;
  }

  std::vector<double> duals(const std::vector<double>& cost) const {
    std::vector<double> pi(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[head_[i]];
      if (cb == 0.0) continue;
      const double* row = &binv_[i * m_];
      for (std::size_t r = 0; r < m_; ++r) pi[r] += cb * row[r];
    }
    return pi;
  }

  void refactor() {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(static_cast<long>(m_), static_cast<long>(m_));
    for (std::size_t c = 0; c < m_; ++c) {
      for (const auto& e : cols_[head_[c]]) {
        basis(static_cast<long>(e.row), static_cast<long>(c)) = e.value;
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
    const auto diag = lu.matrixLU().diagonal().cwiseAbs();
    if (m_ > 0 && !(diag.minCoeff() > 1e-11 * std::max(1.0, diag.maxCoeff()))) {
      throw NumericalFailure("singular basis during refactorization");
    }
    const Eigen::MatrixXd inv = lu.inverse();
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t r = 0; r < m_; ++r) {
        binv_[i * m_ + r] = inv(static_cast<long>(i), static_cast<long>(r));
      }
    }
    // Recompute basic values from the nonbasic ones.
    std::vector<double> rhs = b_;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (pos_[j] >= 0 || x_[j] == 0.0) continue;
      for (const auto& e : cols_[j]) rhs[e.row] -= e.value * x_[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      double v = 0.0;
      const double* row = &binv_[i * m_];
      for (std::size_t r = 0; r < m_; ++r) v += row[r] * rhs[r];
      x_[head_[i]] = v;
    }
    since_refactor_ = 0;
  }

  Outcome iterate(const std::vector<double>& cost) {
    const std::size_t total = cols_.size();
    const std::size_t degenerate_limit = 10 * (m_ + total);
    const std::size_t max_iterations = 50 * (m_ + total) + 10000;
    bool bland = opt_.bland_only;
    std::size_t degenerate_run = 0;
    std::vector<double> alpha(m_);

    while (true) {
      if (iterations_ > max_iterations) {
        throw NumericalFailure("simplex iteration limit exceeded");
      }
      if (since_refactor_ >= opt_.refactor_interval) refactor();

      const std::vector<double> pi = duals(cost);

      // Pricing.
      std::size_t entering = total;
      double best_score = 0.0;
      int direction = 0;
      for (std::size_t j = 0; j < total; ++j) {
        if (pos_[j] >= 0 || up_[j] - lo_[j] <= 0.0) continue;
        double d = cost[j];
        for (const auto& e : cols_[j]) d -= pi[e.row] * e.value;
        int dir = 0;
        if (!at_upper_[j] && d < -opt_.optimality_tol) dir = 1;
        if (at_upper_[j] && d > opt_.optimality_tol) dir = -1;
        if (dir == 0) continue;
        const double score = std::abs(d);
        if (bland) {
          entering = j;
          direction = dir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          entering = j;
          direction = dir;
        }
      }
      if (entering == total) {
        // A handful of rank-one updates is accurate enough to stop on.
        if (since_refactor_ > 16) {
          refactor();
          continue;
        }
        return Outcome::Optimal;
      }

      basis_column(entering, alpha);

      // Ratio test.
      double step = up_[entering] - lo_[entering];
      std::size_t leave_row = m_;
      bool leave_to_upper = false;
      double best_pivot = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = alpha[i] * direction;
        if (std::abs(a) < opt_.pivot_tol) continue;
        const std::size_t bv = head_[i];
        double t;
        bool to_upper;
        if (a > 0.0) {
          t = (x_[bv] - lo_[bv]) / a;
          to_upper = false;
        } else {
          if (!std::isfinite(up_[bv])) continue;
          t = (up_[bv] - x_[bv]) / -a;
          to_upper = true;
        }
        if (t < 0.0) t = 0.0;
        bool take = false;
        if (leave_row == m_) {
          take = t < step;
        } else if (t < step - 1e-12) {
          take = true;
        } else if (t <= step + 1e-12) {
          take = bland ? bv < head_[leave_row] : std::abs(a) > best_pivot;
        }
        if (take) {
          step = t;
          leave_row = i;
          leave_to_upper = to_upper;
          best_pivot = std::abs(a);
        }
      }

      if (leave_row == m_ && !std::isfinite(step)) return Outcome::Unbounded;
      ++iterations_;

      if (step < 1e-12) {
        if (++degenerate_run > degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
      }

      // Primal update.
      const double delta = direction * step;
      x_[entering] += delta;
      for (std::size_t i = 0; i < m_; ++i) x_[head_[i]] -= alpha[i] * delta;

      if (leave_row == m_) {
        // Bound flip of the entering variable.
        at_upper_[entering] = direction > 0;
        x_[entering] = direction > 0 ? up_[entering] : lo_[entering];
        continue;
      }

      pivot(leave_row, entering, alpha, leave_to_upper);
    }
  }

  /// Swaps `entering` into the basis at `leave_row`; alpha is its column in the current basis.
  void pivot(std::size_t leave_row, std::size_t entering, const std::vector<double>& alpha, bool leave_to_upper) {
    const std::size_t leaving = head_[leave_row];
    x_[leaving] = leave_to_upper ? up_[leaving] : lo_[leaving];
    at_upper_[leaving] = leave_to_upper;
    pos_[leaving] = -1;
    head_[leave_row] = entering;
    pos_[entering] = static_cast<long>(leave_row);
    at_upper_[entering] = false;

    const double p = alpha[leave_row];
    double* prow = &binv_[leave_row * m_];
    for (std::size_t r = 0; r < m_; ++r) prow[r] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == leave_row || alpha[i] == 0.0) continue;
      const double f = alpha[i];
      double* row = &binv_[i * m_];
      for (std::size_t r = 0; r < m_; ++r) row[r] -= f * prow[r];
    }
    ++since_refactor_;
  }

  void basis_column(std::size_t j, std::vector<double>& alpha) const {
    std::fill(alpha.begin(), alpha.end(), 0.0);
    for (const auto& e : cols_[j]) {
      for (std::size_t i = 0; i < m_; ++i) alpha[i] += binv_[i * m_ + e.row] * e.value;
    }
  }

  /// Bounded dual simplex: the basis stays dual feasible while basic bound
  /// violations are driven out, largest first.
  DualOutcome dual_iterate(const std::vector<double>& cost) {
    const std::size_t total = cols_.size();
    const std::size_t max_iterations = 10 * (m_ + total) + 1000;
    std::vector<double> alpha(m_);
    std::size_t done = 0;

    while (true) {
      if (since_refactor_ >= opt_.refactor_interval) refactor();

      std::size_t r = m_;
      double worst = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t bv = head_[i];
        const double v = x_[bv];
        double infeas = 0.0;
        if (v < lo_[bv] - opt_.feasibility_tol * (1.0 + std::abs(lo_[bv]))) infeas = lo_[bv] - v;
        if (v > up_[bv] + opt_.feasibility_tol * (1.0 + std::abs(up_[bv]))) infeas = v - up_[bv];
        if (infeas > worst) {
          worst = infeas;
          r = i;
        }
      }
      if (r == m_) return DualOutcome::Feasible;
      if (++done > max_iterations) return DualOutcome::GiveUp;

      const std::size_t leaving = head_[r];
      const bool below = x_[leaving] < lo_[leaving];
      const double* rho = &binv_[r * m_];
      const std::vector<double> pi = duals(cost);

      std::size_t entering = total;
      double best_ratio = kInfinity;
      double best_alpha = 0.0;
      for (std::size_t j = 0; j < total; ++j) {
        if (pos_[j] >= 0 || up_[j] - lo_[j] <= 0.0) continue;
        double a = 0.0;
        for (const auto& e : cols_[j]) a += rho[e.row] * e.value;
        if (std::abs(a) < opt_.pivot_tol) continue;
        const bool up = at_upper_[j];
        const bool eligible = below ? ((!up && a < 0.0) || (up && a > 0.0)) : ((!up && a > 0.0) || (up && a < 0.0));
        if (!eligible) continue;
        const double d = reduced_cost(cost, pi, j);
        const double ratio = std::max(0.0, up ? -d : d) / std::abs(a);
        if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && std::abs(a) > best_alpha)) {
          best_ratio = ratio;
          best_alpha = std::abs(a);
          entering = j;
        }
      }
      if (entering == total) return DualOutcome::Infeasible;

      basis_column(entering, alpha);
      const double target = below ? lo_[leaving] : up_[leaving];
      const double t = (x_[leaving] - target) / alpha[r];
      x_[entering] += t;
      for (std::size_t i = 0; i < m_; ++i) x_[head_[i]] -= alpha[i] * t;
      ++iterations_;
      pivot(r, entering, alpha, !below);
    }
  }

  const LinearProgram& lp_;
  LpOptions opt_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::size_t> active_rows_;
  std::vector<std::vector<ColumnEntry>> cols_;
  std::vector<double> lo_, up_, cost_, b_, x_;
  std::vector<std::size_t> head_;
  std::vector<long> pos_;
  std::vector<bool> at_upper_;
  std::vector<double> binv_;
  std::size_t num_artificials_ = 0;
  std::size_t since_refactor_ = 0;
  std::size_t iterations_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  return solve_lp(lp, lp.lower, lp.upper, options);
}

LpSolution solve_lp(const LinearProgram& lp, std::span<const double> lower,
                    std::span<const double> upper, const LpOptions& options) {
  lp.validate();
  if (lower.size() != lp.num_vars() || upper.size() != lp.num_vars()) {
    throw std::invalid_argument("bound override size mismatch");
  }
  Simplex simplex(lp, lower, upper, options);
  return simplex.run();
}

LpSolution solve_lp(const LinearProgram& lp, std::span<const double> lower,
                    std::span<const double> upper, const LpBasis& start, const LpOptions& options) {
  lp.validate();
  if (lower.size() != lp.num_vars() || upper.size() != lp.num_vars()) {
    throw std::invalid_argument("bound override size mismatch");
  }
  {
    Simplex warm(lp, lower, upper, options);
    if (auto sol = warm.run_warm(start)) return std::move(*sol);
  }
  Simplex cold(lp, lower, upper, options);
  return cold.run();
}

LinearProgram update_lower_bound(const LinearProgram& lp, std::size_t var, double new_lb) {
  if (var >= lp.num_vars()) throw std::out_of_range("unknown variable");
  if (new_lb > lp.upper[var]) {
    throw BoundCrossing("lower bound " + std::to_string(new_lb) + " exceeds upper bound " +
                        std::to_string(lp.upper[var]));
  }
  if (new_lb < lp.lower[var]) throw std::invalid_argument("new lower bound loosens the model");
  LinearProgram out = lp;
  out.lower[var] = new_lb;
  return out;
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    worst = std::max(worst, lp.lower[j] - x[j]);
    if (std::isfinite(lp.upper[j])) worst = std::max(worst, x[j] - lp.upper[j]);
  }
  for (const auto& row : lp.rows) {
    double act = 0.0;
    for (const auto& e : row.coeffs) act += e.value * x[e.index];
    double v = 0.0;
    switch (row.sense) {
      case RowSense::LessEqual: v = act - row.rhs; break;
      case RowSense::GreaterEqual: v = row.rhs - act; break;
      case RowSense::Equal: v = std::abs(act - row.rhs); break;
    }
    worst = std::max(worst, v / (1.0 + std::abs(row.rhs)));
  }
  return worst;
}

namespace {

std::string column_name(const LinearProgram& lp, std::size_t j) {
  if (j < lp.names.size() && !lp.names[j].empty()) return lp.names[j];
  return "x" + std::to_string(j);
}

void write_terms(const LinearProgram& lp, const std::vector<SparseEntry>& terms, std::ostream& out) {
  bool first = true;
  for (const auto& e : terms) {
    if (e.value == 0.0) continue;
    out << (e.value < 0 ? (first ? "-" : " - ") : (first ? "" : " + ")) << std::abs(e.value) << ' '
        << column_name(lp, e.index);
    first = false;
  }
  if (first) out << "0 " << column_name(lp, 0);
}

}  // namespace

void write_lp_format(const LinearProgram& lp, std::ostream& out) {
  out << "Minimize\n obj: ";
  std::vector<SparseEntry> obj;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective[j] != 0.0) obj.push_back({j, lp.objective[j]});
  }
  write_terms(lp, obj, out);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const Row& row = lp.rows[i];
    out << ' ' << (row.name.empty() ? "r" + std::to_string(i) : row.name) << ": ";
    write_terms(lp, row.coeffs, out);
    out << (row.sense == RowSense::LessEqual ? " <= " : row.sense == RowSense::Equal ? " = " : " >= ")
        << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    out << ' ' << lp.lower[j] << " <= " << column_name(lp, j) << " <= ";
    if (std::isfinite(lp.upper[j])) {
      out << lp.upper[j];
    } else {
      out << "+inf";
    }
    out << '\n';
  }
  out << "End\n";
}

}  // namespace dlpp
