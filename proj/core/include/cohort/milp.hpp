#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cohort/ip_model.hpp"
#include "cohort/roster.hpp"
#include "cohort/simplex.hpp"

namespace cohort {

/// Integrality tolerance on binary columns.
inline constexpr double kIntegralityTolerance = 1e-6;

enum class SolveStatus : std::uint8_t {
  kProvenOptimal,
  kFeasibleGap,
  kInfeasible,
  kTimeLimitNoSolution,
  kNumericFailure,
};

std::string_view to_string(SolveStatus status);
std::optional<SolveStatus> parse_solve_status(std::string_view text);

struct SolveStats {
  long nodes = 0;
  long lp_iterations = 0;
  double wall_seconds = 0.0;
  std::optional<double> root_lp_bound;
  int workers = 1;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kTimeLimitNoSolution;
  std::vector<double> primal;  // empty without an incumbent
  std::optional<Assignment> assignment;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double best_bound = -kInfinity;
  /// |objective - best_bound| / best_bound, as a fraction.
  double gap = kInfinity;
  SolveStats stats;

  bool has_solution() const { return !primal.empty(); }
};

/// Proposes a primal point from an LP solution: always at the root, then
/// periodically at later nodes. Returned vectors are checked for feasibility
/// before use.
using RootHeuristic = std::function<std::optional<std::vector<double>>(std::span<const double>)>;
/// Fills in the continuous columns of an integral candidate in place.
using PolishFn = std::function<void(std::vector<double>&)>;

struct SolveOptions {
  double time_limit_s = kInfinity;
  double gap_abs = 1e-6;
  double gap_rel = 0.0;
  int workers = 1;
  std::uint64_t seed = 0;
  /// Valid lower bound on the optimum supplied by the caller.
  std::optional<double> external_lb;
  /// Full primal vector used as the first incumbent when feasible.
  std::optional<std::vector<double>> warm_start;
  RootHeuristic root_heuristic;
  PolishFn polish;
  /// 0 means unlimited.
  long node_limit = 0;
  LpOptions lp;
};

/// Best-bound branch-and-bound over the LP relaxation. Branches on the most
/// fractional binary (lowest column on ties) and plunges into the up branch
/// after every split. With one worker the search is deterministic.
SolveResult solve_ip(const IpModel& model, const SolveOptions& options = {});

/// Reads the assignment block of `primal`. Each student needs exactly one
/// x column within kIntegralityTolerance of 1; anything else throws DecodeError.
Assignment decode_assignment(const IpModel& model, std::span<const double> primal);

}  // namespace cohort
