#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cohort/roster.hpp"

namespace cohort {

/// Truncated normal score model. Each old company gets an offset drawn with
/// `company_sd` (recentred so offsets average to zero); each student adds
/// noise with `student_sd`. Student scores are kept inside [lo, hi].
struct ScoreModel {
  double mean = 0.0;
  double company_sd = 0.0;
  double student_sd = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const ScoreModel&, const ScoreModel&) = default;
};

struct GenSpec {
  int num_companies = 30;
  int num_battalions = 6;
  int min_size = 33;
  int max_size = 42;
  /// Explicit old-company sizes; overrides the range when non-empty.
  std::vector<int> sizes;

  std::array<ScoreModel, kNumMerits> scores{{
      {547.57, 61.31, 60.0, 444.0, 680.0},
      {546.25, 39.26, 45.0, 455.0, 649.0},
      {90.40, 1.38, 2.5, 86.0, 93.0},
  }};
  double male_fraction = 0.72;
  double white_fraction = 0.70;

  std::vector<std::string> sports{"football", "soccer",   "lacrosse", "rowing",    "swimming",
                                  "track",    "baseball", "basketball", "wrestling", "rugby",
                                  "sailing",  "volleyball", "water_polo"};
  double athlete_fraction = 0.3;
  double task_force_fraction = 0.08;
  double prior_service_fraction = 0.05;
  int sapr_per_company = 2;
  int min_sapr = 1;
  int intl_per_company = 1;
  /// Total international students; -1 means intl_per_company * num_companies.
  int international = -1;
  int conflicts = 10;
  bool cross_gender_conflicts = true;
  int locked = 8;

  /// Slack added around the old assignment's own statistics.
  int count_padding = 2;
  std::array<double, kNumMerits> merit_padding{5.0, 5.0, 0.25};
  double fraction_padding = 0.05;
  int athlete_padding = 1;

  /// false: open tolerances, no conflicts, no locks, no SAPR or
  /// international requirements.
  bool side_constraints = true;

  /// 30 companies in 6 battalions, sizes 33 to 42.
  static GenSpec academy();
  /// Small instance with uniform sizes. Battalions hold 4, 5 or 2 companies
  /// when |C| divides evenly, otherwise a single battalion.
  static GenSpec desk(int companies, int size);
  /// Academy defaults with the company sizes of the given class year.
  static GenSpec enrollment(int class_year);

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

/// Enrollment of the 30 old companies for class year 2023 or 2024. Throws
/// InputError for other years.
std::vector<int> enrollment_shapes(int class_year);

/// Deterministic in (spec, seed). Tolerances are derived from the generated
/// old assignment plus the configured padding, so the old assignment and
/// every within-battalion rotation of it are feasible. Throws InputError on
/// a contradictory spec.
Roster generate(const GenSpec& spec, std::uint64_t seed);

}  // namespace cohort
