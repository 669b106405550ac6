#pragma once

#include <cstdint>
#include <span>

#include "cohort/ip_model.hpp"
#include "cohort/model_variant.hpp"
#include "cohort/roster.hpp"

namespace cohort {

/// Deals each old company's students, in input order, round-robin over the
/// other companies: the k-th student of old company o goes to
/// (o + 1 + k mod (|C| - 1)) mod |C|. Side constraints are ignored. With
/// fewer than two companies every student stays.
Assignment cyclic_deal(const Roster& roster);

/// Picks, for each student, the admissible company with the largest x value
/// in `primal` (lowest index on ties).
Assignment round_assignment(const Roster& roster, const XLayout& layout,
                            std::span<const double> primal, bool no_stay);

struct LocalSearchOptions {
  /// Accepted moves before stopping.
  long max_moves = 1'000'000;
  /// Move evaluations before stopping; 0 means unlimited.
  long max_evaluations = 0;
  std::uint64_t seed = 0;
};

struct LocalSearchStats {
  long moves = 0;
  long evaluations = 0;
  double violation = 0.0;  // normalised constraint violation at the end
  double objective = 0.0;
};

/// First-improvement descent over relocate and swap moves in a seeded
/// shuffled order. A move is taken when it lowers the total constraint
/// violation, or keeps it and strictly lowers the variant's objective. A
/// feasible start therefore stays feasible and never gets worse.
Assignment local_search(const Roster& roster, const Assignment& start, const ModelVariant& variant,
                        const LocalSearchOptions& options = {}, LocalSearchStats* stats = nullptr);

}  // namespace cohort
