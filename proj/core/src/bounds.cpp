#include "cohort/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cohort/error.hpp"
#include "cohort/feasibility.hpp"
#include "cohort/objectives.hpp"

namespace cohort {

PairsBoundReport pairs_lower_bound(std::span<const int> sizes, int num_companies) {
  if (num_companies < 2) throw InputError("pairs bound needs at least two companies");
  PairsBoundReport report;
  report.companies.reserve(sizes.size());
  for (int n : sizes) {
    const long long bound = std::max(0, n - (num_companies - 1));
    report.companies.push_back({n, bound});
    report.total += bound;
  }
  return report;
}

PairsBoundReport pairs_lower_bound(const Roster& roster) {
  const auto sizes = roster.old_company_sizes();
  return pairs_lower_bound(sizes, roster.num_companies());
}

double optimality_gap(double best_solution, double best_bound) {
  if (best_bound == 0.0) return best_solution == 0.0 ? 0.0 : kInfinity;
  return std::abs(best_solution - best_bound) / std::abs(best_bound);
}

std::string_view to_string(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::kCertifiedOptimal: return "certified_optimal";
    case CertificateStatus::kSolverOptimal: return "solver_optimal";
    case CertificateStatus::kFeasible: return "feasible";
    case CertificateStatus::kFailed: return "failed";
  }
  return "?";
}

std::optional<CertificateStatus> parse_certificate_status(std::string_view text) {
  for (auto s : {CertificateStatus::kCertifiedOptimal, CertificateStatus::kSolverOptimal,
                 CertificateStatus::kFeasible, CertificateStatus::kFailed}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

Certificate certify(const Assignment& asg, double reported_objective, bool solver_optimal,
                    const Roster& roster, const ModelVariant& variant) {
  Certificate cert;
  cert.reported_objective = reported_objective;
  if (asg.size() != roster.students.size()) {
    cert.notes.push_back(fmt::format("assignment covers {} of {} students", asg.size(),
                                     roster.students.size()));
    return cert;
  }
  cert.recomputed_objective = evaluate_objective(roster, asg, variant);
  const auto report = check_feasible(roster, asg, {.no_stay = variant.no_stay()});
  cert.feasible = report.feasible();
  cert.violations = static_cast<int>(report.violations.size());

  if (variant.kind == ModelKind::kPairs) {
    cert.lower_bound = static_cast<double>(pairs_lower_bound(roster).total);
    const bool locked = std::any_of(roster.students.begin(), roster.students.end(),
                                    [](const Student& s) { return s.battalion_locked; });
    if (locked) {
      cert.notes.push_back("battalion-locked students have fewer admissible companies; the bound stays valid");
    }
  } else {
    cert.lower_bound = 0.0;
  }
  cert.gap = optimality_gap(cert.recomputed_objective, cert.lower_bound);

  const double diff = std::abs(cert.recomputed_objective - reported_objective);
  if (!(diff <= 1e-6 * std::max(1.0, std::abs(reported_objective)))) {
    cert.notes.push_back(fmt::format("reported objective {} but assignment evaluates to {}",
                                     reported_objective, cert.recomputed_objective));
    cert.status = CertificateStatus::kFailed;
    return cert;
  }
  if (!cert.feasible) {
    cert.notes.push_back(fmt::format("assignment violates {} constraint rows", cert.violations));
    cert.status = CertificateStatus::kFailed;
    return cert;
  }
  if (cert.recomputed_objective < cert.lower_bound - 1e-6) {
    cert.notes.push_back("objective lies below the lower bound");
    cert.status = CertificateStatus::kFailed;
    return cert;
  }
  if (std::abs(cert.recomputed_objective - cert.lower_bound) <= 1e-6) {
    cert.status = CertificateStatus::kCertifiedOptimal;
  } else if (solver_optimal) {
    cert.status = CertificateStatus::kSolverOptimal;
  } else {
    cert.status = CertificateStatus::kFeasible;
  }
  return cert;
}

Certificate certify(const SolveResult& result, const Roster& roster, const ModelVariant& variant) {
  if (!result.assignment) {
    Certificate cert;
    cert.notes.push_back(fmt::format("no assignment to certify (status {})", to_string(result.status)));
    return cert;
  }
  return certify(*result.assignment, result.objective,
                 result.status == SolveStatus::kProvenOptimal, roster, variant);
}

}  // namespace cohort
