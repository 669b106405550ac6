#include "cohort/roster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <string_view>

#include <fmt/format.h>

#include "cohort/error.hpp"

namespace cohort {

const char* to_string(Gender g) { return g == Gender::kMale ? "male" : "female"; }

const char* to_string(Quality q) {
  switch (q) {
    case Quality::kAll: return "all";
    case Quality::kTaskForce: return "task_force";
    case Quality::kPriorService: return "prior_service";
  }
  return "?";
}

const char* to_string(Merit m) {
  switch (m) {
    case Merit::kAom: return "aom";
    case Merit::kMom: return "mom";
    case Merit::kPrt: return "prt";
  }
  return "?";
}

const char* to_string(DeviationMode mode) {
  return mode == DeviationMode::kScoreSum ? "sum" : "centered";
}

bool Student::in_group(Quality q) const {
  switch (q) {
    case Quality::kAll: return true;
    case Quality::kTaskForce: return task_force;
    case Quality::kPriorService: return prior_service;
  }
  return false;
}

namespace {

std::vector<int> all_companies(int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) out[static_cast<std::size_t>(c)] = c;
  return out;
}

// Labels end up inside LP names, which forbid most punctuation.
bool is_safe_label(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char ch) {
    return std::isalnum(ch) || ch == '_' || ch == '.';
  });
}

}  // namespace

std::vector<int> Roster::sapr_company_list() const {
  return sapr_companies ? *sapr_companies : all_companies(num_companies());
}

std::vector<int> Roster::intl_company_list() const {
  return intl_companies ? *intl_companies : all_companies(num_companies());
}

std::vector<int> Roster::companies_in_battalion(int battalion) const {
  std::vector<int> out;
  for (int c = 0; c < num_companies(); ++c) {
    if (companies[static_cast<std::size_t>(c)].battalion == battalion) out.push_back(c);
  }
  return out;
}

std::vector<int> Roster::old_company_sizes() const {
  std::vector<int> sizes(companies.size(), 0);
  for (const auto& s : students) {
    const int c = s.old_company.value;
    if (c >= 0 && c < num_companies()) ++sizes[static_cast<std::size_t>(c)];
  }
  return sizes;
}

int Roster::white_race_class() const {
  for (std::size_t e = 0; e < race_classes.size(); ++e) {
    std::string lower = race_classes[e];
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "white") return static_cast<int>(e);
  }
  return 0;
}

std::optional<int> Roster::find_student(std::string_view id) const {
  for (std::size_t a = 0; a < students.size(); ++a) {
    if (students[a].id == id) return static_cast<int>(a);
  }
  return std::nullopt;
}

std::optional<int> Roster::find_company(std::string_view label) const {
  for (std::size_t c = 0; c < companies.size(); ++c) {
    if (companies[c].label == label) return static_cast<int>(c);
  }
  return std::nullopt;
}

Assignment Assignment::identity(const Roster& roster) {
  std::vector<CompanyId> t;
  t.reserve(roster.students.size());
  for (const auto& s : roster.students) t.push_back(s.old_company);
  return Assignment(std::move(t));
}

void require_total(const Roster& roster, const Assignment& asg) {
  if (asg.size() != roster.students.size()) {
    throw InputError(fmt::format("assignment covers {} students, roster has {}", asg.size(),
                                 roster.students.size()));
  }
  for (std::size_t a = 0; a < asg.size(); ++a) {
    const int c = asg[a].value;
    if (c < 0 || c >= roster.num_companies()) {
      throw InputError(fmt::format("student {} assigned to unknown company index {}",
                                   roster.students[a].id, c));
    }
  }
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNoCompanies: return "NoCompanies";
    case ViolationKind::kEmptyId: return "EmptyId";
    case ViolationKind::kDuplicateId: return "DuplicateId";
    case ViolationKind::kBadLabel: return "BadLabel";
    case ViolationKind::kUnknownCompany: return "UnknownCompany";
    case ViolationKind::kUnknownBattalion: return "UnknownBattalion";
    case ViolationKind::kUnevenBattalions: return "UnevenBattalions";
    case ViolationKind::kBadScore: return "BadScore";
    case ViolationKind::kUnknownRace: return "UnknownRace";
    case ViolationKind::kUnknownSport: return "UnknownSport";
    case ViolationKind::kInvertedBound: return "InvertedBound";
    case ViolationKind::kFractionOutOfRange: return "FractionOutOfRange";
    case ViolationKind::kToleranceShape: return "ToleranceShape";
    case ViolationKind::kBadConflictPair: return "BadConflictPair";
    case ViolationKind::kBadWeights: return "BadWeights";
    case ViolationKind::kBadCompanySubset: return "BadCompanySubset";
  }
  return "?";
}

std::vector<Violation> validate_roster(const Roster& roster) {
  std::vector<Violation> out;
  auto report = [&out](ViolationKind k, std::string subject) {
    out.push_back({k, std::move(subject)});
  };

  const int num_companies = roster.num_companies();
  const int num_battalions = static_cast<int>(roster.battalions.size());
  if (num_companies == 0) report(ViolationKind::kNoCompanies, "companies");

  for (const auto& c : roster.companies) {
    if (!is_safe_label(c.label)) report(ViolationKind::kBadLabel, c.label);
    if (c.battalion < 0 || c.battalion >= num_battalions) {
      report(ViolationKind::kUnknownBattalion, c.label);
    }
  }
  for (const auto& b : roster.battalions) {
    if (!is_safe_label(b)) report(ViolationKind::kBadLabel, b);
  }
  for (const auto& r : roster.race_classes) {
    if (!is_safe_label(r)) report(ViolationKind::kBadLabel, r);
  }
  for (const auto& s : roster.sports) {
    if (!is_safe_label(s)) report(ViolationKind::kBadLabel, s);
  }
  {
    std::set<std::string_view> seen;
    for (const auto& c : roster.companies) {
      if (!seen.insert(c.label).second) report(ViolationKind::kDuplicateId, c.label);
    }
  }

  if (num_battalions > 0 && num_companies > 0) {
    std::vector<int> per(static_cast<std::size_t>(num_battalions), 0);
    for (const auto& c : roster.companies) {
      if (c.battalion >= 0 && c.battalion < num_battalions) ++per[static_cast<std::size_t>(c.battalion)];
    }
    if (std::adjacent_find(per.begin(), per.end(), std::not_equal_to<>()) != per.end()) {
      report(ViolationKind::kUnevenBattalions, "battalions");
    }
  } else if (num_companies > 0) {
    report(ViolationKind::kUnknownBattalion, "battalions");
  }

  std::set<std::string_view> ids;
  for (const auto& s : roster.students) {
    if (s.id.empty()) {
      report(ViolationKind::kEmptyId, "");
      continue;
    }
    if (!ids.insert(s.id).second) report(ViolationKind::kDuplicateId, s.id);
    if (!std::all_of(s.id.begin(), s.id.end(),
                     [](unsigned char ch) { return std::isalnum(ch) != 0; })) {
      report(ViolationKind::kBadLabel, s.id);
    }
    if (s.old_company.value < 0 || s.old_company.value >= num_companies) {
      report(ViolationKind::kUnknownCompany, s.id);
    }
    for (double v : s.scores) {
      if (!std::isfinite(v) || v < 0.0) {
        report(ViolationKind::kBadScore, s.id);
        break;
      }
    }
    if (s.race < 0 || s.race >= static_cast<int>(roster.race_classes.size())) {
      report(ViolationKind::kUnknownRace, s.id);
    }
    for (int v : s.sports) {
      if (v < 0 || v >= static_cast<int>(roster.sports.size())) {
        report(ViolationKind::kUnknownSport, s.id);
        break;
      }
    }
  }

  const auto& tol = roster.tolerances;
  for (int q = 0; q < kNumQualities; ++q) {
    const auto& r = tol.count[static_cast<std::size_t>(q)];
    if (r.min > r.max) report(ViolationKind::kInvertedBound, to_string(static_cast<Quality>(q)));
    if (r.min < 0) report(ViolationKind::kFractionOutOfRange, to_string(static_cast<Quality>(q)));
  }
  for (int m = 0; m < kNumMerits; ++m) {
    const auto& r = tol.avg_score[static_cast<std::size_t>(m)];
    if (!(r.min <= r.max)) report(ViolationKind::kInvertedBound, to_string(static_cast<Merit>(m)));
  }
  auto check_fraction = [&](const Range& r, const std::string& name) {
    if (!(r.min <= r.max)) report(ViolationKind::kInvertedBound, name);
    if (!(r.min >= 0.0 && r.max <= 1.0)) report(ViolationKind::kFractionOutOfRange, name);
  };
  for (int g = 0; g < kNumGenders; ++g) {
    check_fraction(tol.gender_fraction[static_cast<std::size_t>(g)],
                   to_string(static_cast<Gender>(g)));
  }
  if (tol.race_fraction.size() != roster.race_classes.size()) {
    report(ViolationKind::kToleranceShape, "race_fraction");
  } else {
    for (std::size_t e = 0; e < tol.race_fraction.size(); ++e) {
      check_fraction(tol.race_fraction[e], roster.race_classes[e]);
    }
  }
  if (tol.max_athletes.size() != roster.sports.size()) {
    report(ViolationKind::kToleranceShape, "max_athletes");
  } else {
    for (std::size_t v = 0; v < tol.max_athletes.size(); ++v) {
      if (tol.max_athletes[v] < 0) report(ViolationKind::kInvertedBound, roster.sports[v]);
    }
  }
  if (tol.min_sapr < 0) report(ViolationKind::kInvertedBound, "min_sapr");
  if (tol.num_intl < 0) report(ViolationKind::kInvertedBound, "num_intl");

  std::set<std::pair<int, int>> pairs;
  for (const auto& [r, rho] : roster.conflict_pairs) {
    const bool in_range = r >= 0 && rho >= 0 && r < roster.num_students() &&
                          rho < roster.num_students();
    if (!in_range || r == rho) {
      report(ViolationKind::kBadConflictPair, fmt::format("{},{}", r, rho));
      continue;
    }
    if (!pairs.insert(std::minmax(r, rho)).second) {
      report(ViolationKind::kBadConflictPair,
             fmt::format("{},{}", roster.students[static_cast<std::size_t>(r)].id,
                         roster.students[static_cast<std::size_t>(rho)].id));
    }
  }

  const auto& w = roster.weights;
  if (!(w.aom >= 0.0 && w.aom <= 1.0 && w.mom >= 0.0 && w.mom <= 1.0) ||
      std::abs(w.aom + w.mom - 1.0) > 1e-9) {
    report(ViolationKind::kBadWeights, "weights");
  }

  auto check_subset = [&](const std::optional<std::vector<int>>& subset, const char* name) {
    if (!subset) return;
    std::set<int> seen;
    for (int c : *subset) {
      if (c < 0 || c >= num_companies || !seen.insert(c).second) {
        report(ViolationKind::kBadCompanySubset, name);
        return;
      }
    }
  };
  check_subset(roster.sapr_companies, "sapr_companies");
  check_subset(roster.intl_companies, "intl_companies");
  return out;
}

}  // namespace cohort
