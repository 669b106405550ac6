#pragma once

#include <vector>

#include "cohort/constraint_family.hpp"
#include "cohort/roster.hpp"

namespace cohort {

/// Absolute tolerance shared by the feasibility checker and the LP solver.
inline constexpr double kFeasibilityTolerance = 1e-6;

struct FeasibilityOptions {
  /// Enforce the no-stay rule (DEV and PAIRS models).
  bool no_stay = false;
  double tolerance = kFeasibilityTolerance;
};

/// One violated row. Indices are -1 when they do not apply. `excess` is the
/// amount by which the row is violated in its homogenised form.
struct ConstraintViolation {
  ConstraintFamily family;
  int company = -1;
  int student = -1;
  int index = -1;  // quality / merit / gender / race class / sport / pair index
  double excess = 0.0;
};

struct FeasibilityReport {
  std::vector<ConstraintViolation> violations;

  bool feasible() const { return violations.empty(); }
  bool has(ConstraintFamily family) const;
  int count(ConstraintFamily family) const;
};

/// Evaluates every constraint block on a concrete assignment. Averages and
/// fractions are tested in the multiplied-through form used by the compiled
/// model, e.g. sum(score) - max_avg * size <= tol. Throws InputError when the
/// assignment is not total over the roster.
FeasibilityReport check_feasible(const Roster& roster, const Assignment& asg,
                                 const FeasibilityOptions& options = {});

/// Companies a student may be placed in under the battalion lock. Unlocked
/// students get every company. With no_stay the old company is excluded.
std::vector<int> admissible_companies(const Roster& roster, int student, bool no_stay);

}  // namespace cohort
