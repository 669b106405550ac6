#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohort/milp.hpp"
#include "cohort/model_variant.hpp"
#include "cohort/roster.hpp"

namespace cohort {

struct CompanyPairsBound {
  int size = 0;
  long long bound = 0;  // max(0, size - (companies - 1))
};

struct PairsBoundReport {
  std::vector<CompanyPairsBound> companies;  // indexed by old company
  long long total = 0;
};

/// Pairs every no-stay assignment must realise: a company of n students has
/// |C| - 1 admissible targets, so at least n - (|C| - 1) of them double up.
/// Throws InputError when fewer than two companies exist.
PairsBoundReport pairs_lower_bound(const Roster& roster);
PairsBoundReport pairs_lower_bound(std::span<const int> sizes, int num_companies);

/// |best - bound| / bound as a fraction. A zero bound gives 0 when best is 0
/// and infinity otherwise.
double optimality_gap(double best_solution, double best_bound);

enum class CertificateStatus : std::uint8_t {
  kCertifiedOptimal,  // objective meets an independent lower bound
  kSolverOptimal,     // solver proved optimality, no independent bound matched
  kFeasible,          // verified feasible, optimality not established
  kFailed,            // recomputation or feasibility check disagrees
};

std::string_view to_string(CertificateStatus status);
std::optional<CertificateStatus> parse_certificate_status(std::string_view text);

struct Certificate {
  CertificateStatus status = CertificateStatus::kFailed;
  double reported_objective = 0.0;
  double recomputed_objective = 0.0;
  double lower_bound = 0.0;
  double gap = kInfinity;
  bool feasible = false;
  int violations = 0;
  std::vector<std::string> notes;

  bool ok() const { return status != CertificateStatus::kFailed; }
};

/// Re-derives the objective and feasibility of a result from its assignment
/// and compares it with the variant's independent lower bound (the pairs
/// bound for PAIRS, zero otherwise).
Certificate certify(const SolveResult& result, const Roster& roster, const ModelVariant& variant);
Certificate certify(const Assignment& asg, double reported_objective, bool solver_optimal,
                    const Roster& roster, const ModelVariant& variant);

}  // namespace cohort
