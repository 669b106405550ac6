#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "cohort/roster.hpp"

namespace cohort {

enum class ModelKind : std::uint8_t {
  kMin,    // minimise students kept in their old company
  kDev,    // minimise pairwise company score deviation
  kPairs,  // minimise co-located pairs from the same old company
};

struct ModelVariant {
  ModelKind kind = ModelKind::kMin;
  Weights weights;  // used by kDev
  DeviationMode deviation = DeviationMode::kScoreSum;

  /// DEV and PAIRS forbid staying in the old company.
  bool no_stay() const { return kind != ModelKind::kMin; }

  static ModelVariant min() { return {ModelKind::kMin, {}, DeviationMode::kScoreSum}; }
  static ModelVariant dev(Weights w, DeviationMode mode = DeviationMode::kScoreSum) {
    return {ModelKind::kDev, w, mode};
  }
  static ModelVariant pairs() { return {ModelKind::kPairs, {}, DeviationMode::kScoreSum}; }
  /// Variant of the given kind taking weights and deviation mode from the roster.
  static ModelVariant for_roster(ModelKind kind, const Roster& roster) {
    return {kind, roster.weights, roster.deviation_mode};
  }
};

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view text);

}  // namespace cohort
