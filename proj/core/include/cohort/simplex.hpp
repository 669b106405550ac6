#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <memory>
#include <vector>

#include "cohort/ip_model.hpp"

namespace cohort {

enum class LpStatus : std::uint8_t {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kCutoff,  // dual bound reached the caller's cutoff before optimality
  kNumericFailure,
};

const char* to_string(LpStatus status);

struct LpOptions {
  double primal_tol = 1e-7;
  double dual_tol = 1e-7;
  double pivot_tol = 1e-7;
  /// Relative size of the cost perturbation used by the dual phase; 0 disables it.
  double cost_perturbation = 1e-6;
  int refactor_interval = 100;
  /// Consecutive degenerate primal pivots before switching to Bland's rule.
  int stall_threshold = 50;
  /// 0 selects a limit proportional to the model size.
  long iteration_limit = 0;
  /// Restarts from the slack basis after a singular factorisation.
  int max_recoveries = 3;
  /// Solves past this point stop with kIterationLimit.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct LpSolution {
  LpStatus status = LpStatus::kNumericFailure;
  std::vector<double> primal;          // one value per column
  std::vector<double> row_duals;       // one value per row
  std::vector<double> reduced_costs;   // one value per column
  double objective = 0.0;
  long iterations = 0;
};

/// Per-variable basis state, enough to restart the solver on a subproblem.
struct BasisSnapshot {
  enum State : std::uint8_t { kBasic, kAtLower, kAtUpper, kAtZero };
  std::vector<int> basic;            // basic variable per basis position
  std::vector<std::uint8_t> state;   // columns first, then one logical per row
};

/// Bounded-variable revised simplex over the LP relaxation of an IpModel.
///
/// Each row i gets a logical r_i = a_i x bounded by the row sense, so the
/// working system is [A | -I] (x, r) = 0 with bounds on every variable. A
/// dual simplex phase with steepest-edge pricing and perturbed costs drives
/// the basis to primal feasibility; a primal phase on the true costs then
/// removes any remaining dual infeasibility. The basis inverse is a
/// sparse LU factorisation plus product-form eta updates, refactorised every
/// `refactor_interval` pivots. After `stall_threshold` degenerate pivots the
/// primal pricing falls back to Bland's rule until progress resumes.
///
/// Column bounds may be tightened between solves; the previous basis is kept
/// as a warm start, which is what branch-and-bound relies on.
class LpSolver {
 public:
  explicit LpSolver(const IpModel& model, LpOptions options = {});
  ~LpSolver();
  LpSolver(LpSolver&&) noexcept;
  LpSolver& operator=(LpSolver&&) noexcept;

  int num_cols() const;
  int num_rows() const;

  void set_column_bounds(int col, double lower, double upper);
  double column_lower(int col) const;
  double column_upper(int col) const;
  /// Resets every column to the bounds of the model.
  void restore_bounds();

  /// Solves from the current basis. With a finite cutoff, returns kCutoff as
  /// soon as the dual bound proves the optimum exceeds it.
  LpStatus solve(double cutoff = kInfinity);

  LpStatus status() const;
  double objective() const;
  std::vector<double> primal() const;
  std::vector<double> row_duals() const;
  std::vector<double> reduced_costs() const;
  long iterations() const;
  LpSolution solution() const;

  BasisSnapshot basis() const;
  void load_basis(const BasisSnapshot& basis);
  void reset_to_slack_basis();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot solve of the LP relaxation.
LpSolution solve_lp(const IpModel& model, const LpOptions& options = {});

}  // namespace cohort
