#pragma once

#include <cstdint>
#include <string_view>

namespace cohort {

/// Constraint blocks of the reassignment models.
enum class ConstraintFamily : std::uint8_t {
  kOneCompany,    // each student in exactly one company
  kCountMax,
  kCountMin,
  kMeritMax,
  kMeritMin,
  kGenderMax,
  kGenderMin,
  kRaceMax,
  kRaceMin,
  kSportMax,
  kConflict,
  kSaprMin,
  kIntlExact,
  kBattalion,
  kNoStay,        // no student keeps the old company (DEV, PAIRS)
  kAomDeviation,  // +/- AOM linearisation rows (DEV)
  kMomDeviation,  // +/- MOM linearisation rows (DEV)
  kPairLink,      // u >= x + x - 1 (PAIRS)
  kUser,          // rows added outside the compiler
};

inline constexpr int kNumConstraintFamilies = static_cast<int>(ConstraintFamily::kUser) + 1;

std::string_view family_tag(ConstraintFamily family);

}  // namespace cohort
