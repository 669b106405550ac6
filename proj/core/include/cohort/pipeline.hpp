#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "cohort/compiler.hpp"
#include "cohort/milp.hpp"
#include "cohort/model_variant.hpp"
#include "cohort/roster.hpp"

namespace cohort {

enum class WarmStart : std::uint8_t { kNone, kDeal, kDealLocalSearch };

std::string_view to_string(WarmStart mode);
std::optional<WarmStart> parse_warm_start(std::string_view text);

struct RosterSolveOptions {
  /// Time limit, gap tolerances, workers, seed, node limit and any external
  /// lower bound. Warm start and callbacks are filled in by solve_roster.
  SolveOptions solver;
  WarmStart warm_start = WarmStart::kDealLocalSearch;
  /// For PAIRS, raise the external lower bound to the pairs bound.
  bool pairs_bound = true;
  /// Round the root relaxation and repair it by local search.
  bool root_heuristic = true;
  long ls_moves = 100'000;
  long ls_evaluations = 2'000'000;

  friend bool operator==(const RosterSolveOptions& a, const RosterSolveOptions& b) {
    return a.warm_start == b.warm_start && a.pairs_bound == b.pairs_bound &&
           a.root_heuristic == b.root_heuristic && a.ls_moves == b.ls_moves &&
           a.ls_evaluations == b.ls_evaluations && a.solver.time_limit_s == b.solver.time_limit_s &&
           a.solver.gap_abs == b.solver.gap_abs && a.solver.gap_rel == b.solver.gap_rel &&
           a.solver.workers == b.solver.workers && a.solver.seed == b.solver.seed &&
           a.solver.external_lb == b.solver.external_lb && a.solver.node_limit == b.solver.node_limit;
  }
};

/// Warm start of the requested kind as a full primal vector, or nullopt for
/// kNone. The vector may be infeasible; the solver screens it.
std::optional<std::vector<double>> build_warm_start(const CompiledModel& model, const Roster& roster,
                                                    WarmStart mode, std::uint64_t seed, long ls_moves,
                                                    long ls_evaluations);

/// Compiles the roster, seeds the search with heuristics and solves it.
/// Throws InputError or StructuralInfeasibility from the compiler.
SolveResult solve_roster(const Roster& roster, const ModelVariant& variant,
                         const RosterSolveOptions& options = {});

}  // namespace cohort
