#pragma once

#include <array>
#include <vector>

#include "cohort/model_variant.hpp"
#include "cohort/roster.hpp"

namespace cohort {

/// Number of students whose new company equals their old one.
int count_same_company(const Roster& roster, const Assignment& asg);

/// Unordered pairs of students that shared an old company and share the new
/// one as well.
long long count_pairs(const Roster& roster, const Assignment& asg);

/// Per-company totals of one merit score under `asg`. With kCentered each
/// score is shifted by the roster-wide mean of that merit first.
std::vector<double> company_score_sums(const Roster& roster, const Assignment& asg, Merit merit,
                                       DeviationMode mode = DeviationMode::kScoreSum);

/// aom_w * sum_{c != c'} |S_aom(c) - S_aom(c')| + mom_w * (same for MOM),
/// over ordered company pairs.
double weighted_deviation(const Roster& roster, const Assignment& asg, const Weights& weights,
                          DeviationMode mode = DeviationMode::kScoreSum);
double weighted_deviation(const Roster& roster, const Assignment& asg);

/// Objective of `variant` evaluated directly on an assignment.
double evaluate_objective(const Roster& roster, const Assignment& asg,
                          const ModelVariant& variant);

/// Mean of one merit score over the whole roster (0 for an empty roster).
double roster_mean(const Roster& roster, Merit merit);

}  // namespace cohort
