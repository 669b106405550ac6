#include "cohort/feasibility.hpp"

#include <algorithm>

namespace cohort {

std::string_view family_tag(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::kOneCompany: return "one_company";
    case ConstraintFamily::kCountMax: return "count_max";
    case ConstraintFamily::kCountMin: return "count_min";
    case ConstraintFamily::kMeritMax: return "merit_max";
    case ConstraintFamily::kMeritMin: return "merit_min";
    case ConstraintFamily::kGenderMax: return "gender_max";
    case ConstraintFamily::kGenderMin: return "gender_min";
    case ConstraintFamily::kRaceMax: return "race_max";
    case ConstraintFamily::kRaceMin: return "race_min";
    case ConstraintFamily::kSportMax: return "sport_max";
    case ConstraintFamily::kConflict: return "conflict";
    case ConstraintFamily::kSaprMin: return "sapr_min";
    case ConstraintFamily::kIntlExact: return "intl_exact";
    case ConstraintFamily::kBattalion: return "battalion";
    case ConstraintFamily::kNoStay: return "no_stay";
    case ConstraintFamily::kAomDeviation: return "aom_deviation";
    case ConstraintFamily::kMomDeviation: return "mom_deviation";
    case ConstraintFamily::kPairLink: return "pair_link";
    case ConstraintFamily::kUser: return "user";
  }
  return "?";
}

bool FeasibilityReport::has(ConstraintFamily family) const { return count(family) > 0; }

int FeasibilityReport::count(ConstraintFamily family) const {
  return static_cast<int>(std::count_if(violations.begin(), violations.end(),
                                        [family](const auto& v) { return v.family == family; }));
}

std::vector<int> admissible_companies(const Roster& roster, int student, bool no_stay) {
  const auto& s = roster.students[static_cast<std::size_t>(student)];
  std::vector<int> out;
  if (s.battalion_locked) {
    const int batt = roster.companies[static_cast<std::size_t>(s.old_company.value)].battalion;
    out = roster.companies_in_battalion(batt);
  } else {
    out.resize(roster.companies.size());
    for (int c = 0; c < roster.num_companies(); ++c) out[static_cast<std::size_t>(c)] = c;
  }
  if (no_stay) std::erase(out, s.old_company.value);
  return out;
}

namespace {

struct CompanyTotals {
  int size = 0;
  std::array<int, kNumQualities> quality{};
  std::array<double, kNumMerits> score{};
  std::array<int, kNumGenders> gender{};
  std::vector<int> race;
  std::vector<int> sport;
  int sapr = 0;
  int intl = 0;
};

}  // namespace

FeasibilityReport check_feasible(const Roster& roster, const Assignment& asg,
                                 const FeasibilityOptions& options) {
  require_total(roster, asg);
  const double tol = options.tolerance;
  const auto& t = roster.tolerances;
  const std::size_t nc = roster.companies.size();

  std::vector<CompanyTotals> totals(nc);
  for (auto& ct : totals) {
    ct.race.assign(roster.race_classes.size(), 0);
    ct.sport.assign(roster.sports.size(), 0);
  }
  for (std::size_t a = 0; a < roster.students.size(); ++a) {
    const auto& s = roster.students[a];
    auto& ct = totals[static_cast<std::size_t>(asg[a].value)];
    ++ct.size;
    for (int q = 0; q < kNumQualities; ++q) {
      if (s.in_group(static_cast<Quality>(q))) ++ct.quality[static_cast<std::size_t>(q)];
    }
    for (int m = 0; m < kNumMerits; ++m) ct.score[static_cast<std::size_t>(m)] += s.scores[static_cast<std::size_t>(m)];
    ++ct.gender[static_cast<std::size_t>(s.gender)];
    if (s.race >= 0 && static_cast<std::size_t>(s.race) < ct.race.size()) ++ct.race[static_cast<std::size_t>(s.race)];
    for (int v : s.sports) ++ct.sport[static_cast<std::size_t>(v)];
    if (s.sapr_guide) ++ct.sapr;
    if (s.international) ++ct.intl;
  }

  FeasibilityReport report;
  auto flag = [&](ConstraintFamily f, int company, int student, int index, double excess) {
    report.violations.push_back({f, company, student, index, excess});
  };
  auto upper = [&](ConstraintFamily f, int c, int index, double lhs) {
    if (lhs > tol) flag(f, c, -1, index, lhs);
  };
  auto lower = [&](ConstraintFamily f, int c, int index, double lhs) {
    if (lhs < -tol) flag(f, c, -1, index, -lhs);
  };

  for (std::size_t ci = 0; ci < nc; ++ci) {
    const int c = static_cast<int>(ci);
    const auto& ct = totals[ci];
    const double size = ct.size;
    for (int q = 0; q < kNumQualities; ++q) {
      const auto& r = t.count[static_cast<std::size_t>(q)];
      const int n = ct.quality[static_cast<std::size_t>(q)];
      upper(ConstraintFamily::kCountMax, c, q, n - r.max);
      lower(ConstraintFamily::kCountMin, c, q, n - r.min);
    }
    for (int m = 0; m < kNumMerits; ++m) {
      const auto& r = t.avg_score[static_cast<std::size_t>(m)];
      const double sum = ct.score[static_cast<std::size_t>(m)];
      upper(ConstraintFamily::kMeritMax, c, m, sum - r.max * size);
      lower(ConstraintFamily::kMeritMin, c, m, sum - r.min * size);
    }
    for (int g = 0; g < kNumGenders; ++g) {
      const auto& r = t.gender_fraction[static_cast<std::size_t>(g)];
      const double n = ct.gender[static_cast<std::size_t>(g)];
      upper(ConstraintFamily::kGenderMax, c, g, n - r.max * size);
      lower(ConstraintFamily::kGenderMin, c, g, n - r.min * size);
    }
    for (std::size_t e = 0; e < t.race_fraction.size() && e < ct.race.size(); ++e) {
      const auto& r = t.race_fraction[e];
      const double n = ct.race[e];
      upper(ConstraintFamily::kRaceMax, c, static_cast<int>(e), n - r.max * size);
      lower(ConstraintFamily::kRaceMin, c, static_cast<int>(e), n - r.min * size);
    }
    for (std::size_t v = 0; v < t.max_athletes.size() && v < ct.sport.size(); ++v) {
      upper(ConstraintFamily::kSportMax, c, static_cast<int>(v), ct.sport[v] - t.max_athletes[v]);
    }
  }

  for (std::size_t k = 0; k < roster.conflict_pairs.size(); ++k) {
    const auto [r, rho] = roster.conflict_pairs[k];
    const int c = asg[static_cast<std::size_t>(r)].value;
    if (c == asg[static_cast<std::size_t>(rho)].value) {
      flag(ConstraintFamily::kConflict, c, r, static_cast<int>(k), 1.0);
    }
  }
  for (int c : roster.sapr_company_list()) {
    lower(ConstraintFamily::kSaprMin, c, -1, totals[static_cast<std::size_t>(c)].sapr - t.min_sapr);
  }
  for (int c : roster.intl_company_list()) {
    const int diff = totals[static_cast<std::size_t>(c)].intl - t.num_intl;
    if (diff != 0) flag(ConstraintFamily::kIntlExact, c, -1, -1, std::abs(diff));
  }
  for (std::size_t a = 0; a < roster.students.size(); ++a) {
    const auto& s = roster.students[a];
    const int target = asg[a].value;
    if (s.battalion_locked) {
      const auto ok = admissible_companies(roster, static_cast<int>(a), options.no_stay);
      if (std::find(ok.begin(), ok.end(), target) == ok.end()) {
        flag(ConstraintFamily::kBattalion, target, static_cast<int>(a), -1, 1.0);
      }
    }
    if (options.no_stay && target == s.old_company.value) {
      flag(ConstraintFamily::kNoStay, target, static_cast<int>(a), -1, 1.0);
    }
  }
  return report;
}

}  // namespace cohort
