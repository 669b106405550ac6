#include "cohort/objectives.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace cohort {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kMin: return "min";
    case ModelKind::kDev: return "dev";
    case ModelKind::kPairs: return "pairs";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "min" || lower == "brp-min") return ModelKind::kMin;
  if (lower == "dev" || lower == "brp-dev") return ModelKind::kDev;
  if (lower == "pairs" || lower == "brp-pairs") return ModelKind::kPairs;
  return std::nullopt;
}

int count_same_company(const Roster& roster, const Assignment& asg) {
  require_total(roster, asg);
  int n = 0;
  for (std::size_t a = 0; a < asg.size(); ++a) {
    if (asg[a] == roster.students[a].old_company) ++n;
  }
  return n;
}

long long count_pairs(const Roster& roster, const Assignment& asg) {
  require_total(roster, asg);
  const std::size_t nc = roster.companies.size();
  std::vector<long long> cell(nc * nc, 0);
  for (std::size_t a = 0; a < asg.size(); ++a) {
    const auto old = static_cast<std::size_t>(roster.students[a].old_company.value);
    ++cell[old * nc + static_cast<std::size_t>(asg[a].value)];
  }
  long long pairs = 0;
  for (long long k : cell) pairs += k * (k - 1) / 2;
  return pairs;
}

double roster_mean(const Roster& roster, Merit merit) {
  if (roster.students.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : roster.students) sum += s.score(merit);
  return sum / static_cast<double>(roster.students.size());
}

std::vector<double> company_score_sums(const Roster& roster, const Assignment& asg, Merit merit,
                                       DeviationMode mode) {
  require_total(roster, asg);
  const double shift = mode == DeviationMode::kCentered ? roster_mean(roster, merit) : 0.0;
  std::vector<double> sums(roster.companies.size(), 0.0);
  for (std::size_t a = 0; a < asg.size(); ++a) {
    sums[static_cast<std::size_t>(asg[a].value)] += roster.students[a].score(merit) - shift;
  }
  return sums;
}

namespace {

double ordered_pair_spread(const std::vector<double>& sums) {
  double total = 0.0;
  for (std::size_t c = 0; c < sums.size(); ++c) {
    for (std::size_t d = 0; d < sums.size(); ++d) {
      if (c != d) total += std::abs(sums[c] - sums[d]);
    }
  }
  return total;
}

}  // namespace

double weighted_deviation(const Roster& roster, const Assignment& asg, const Weights& weights,
                          DeviationMode mode) {
  double total = 0.0;
  if (weights.aom != 0.0) {
    total += weights.aom * ordered_pair_spread(company_score_sums(roster, asg, Merit::kAom, mode));
  }
  if (weights.mom != 0.0) {
    total += weights.mom * ordered_pair_spread(company_score_sums(roster, asg, Merit::kMom, mode));
  }
  return total;
}

double weighted_deviation(const Roster& roster, const Assignment& asg) {
  return weighted_deviation(roster, asg, roster.weights, roster.deviation_mode);
}

double evaluate_objective(const Roster& roster, const Assignment& asg,
                          const ModelVariant& variant) {
  switch (variant.kind) {
    case ModelKind::kMin: return count_same_company(roster, asg);
    case ModelKind::kDev: return weighted_deviation(roster, asg, variant.weights, variant.deviation);
    case ModelKind::kPairs: return static_cast<double>(count_pairs(roster, asg));
  }
  return 0.0;
}

}  // namespace cohort
