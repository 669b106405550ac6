#pragma once

#include <utility>
#include <vector>

#include "cohort/ip_model.hpp"
#include "cohort/model_variant.hpp"
#include "cohort/roster.hpp"

namespace cohort {

/// An IpModel plus the column map needed to move between assignments and
/// primal vectors.
struct CompiledModel {
  IpModel ip;
  ModelVariant variant;
  XLayout x;
  /// DEV: y and z columns, one per ordered company pair in `company_pairs`.
  int y_offset = -1;
  int z_offset = -1;
  std::vector<std::pair<int, int>> company_pairs;
  /// PAIRS: u columns, one per same-old-company student pair in `student_pairs`.
  int u_offset = -1;
  std::vector<std::pair<int, int>> student_pairs;
};

/// Builds the integer program for `variant`. Rows and columns come out in a
/// fixed order: students in input order, companies ascending, pairs
/// lexicographic. Throws InputError for malformed or empty rosters and
/// StructuralInfeasibility when the no-stay rule cannot be met.
CompiledModel compile(const Roster& roster, const ModelVariant& variant);

/// All unordered pairs (i < j) of students sharing an old company, sorted.
std::vector<std::pair<int, int>> same_old_company_pairs(const Roster& roster);

/// Primal vector for an assignment: x one-hot, y/z set to the absolute
/// company score differences, u set to the co-location indicators.
std::vector<double> complete_solution(const CompiledModel& model, const Roster& roster,
                                      const Assignment& asg);

}  // namespace cohort
