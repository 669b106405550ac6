#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "cohort/roster.hpp"

namespace fixtures {

/// Roster whose tolerances admit every assignment. Companies are labelled
/// C1..Cn, all in one battalion; students are s1..sk with the given old
/// companies and zero scores.
inline cohort::Roster open_roster(int num_companies, std::initializer_list<int> old_companies) {
  cohort::Roster r;
  r.battalions = {"b1"};
  for (int c = 0; c < num_companies; ++c) r.companies.push_back({"C" + std::to_string(c + 1), 0});
  int k = 0;
  for (int old : old_companies) {
    cohort::Student s;
    s.id = "s" + std::to_string(++k);
    s.old_company = {old};
    r.students.push_back(s);
  }
  auto& t = r.tolerances;
  const int n = static_cast<int>(r.students.size());
  for (auto& c : t.count) c = {0, n};
  for (auto& a : t.avg_score) a = {0.0, 1e9};
  for (auto& g : t.gender_fraction) g = {0.0, 1.0};
  t.race_fraction.assign(r.race_classes.size(), {0.0, 1.0});
  t.max_athletes.assign(r.sports.size(), n);
  t.min_sapr = 0;
  t.num_intl = 0;
  return r;
}

inline cohort::Assignment assign(std::initializer_list<int> targets) {
  std::vector<cohort::CompanyId> ids;
  for (int c : targets) ids.push_back({c});
  return cohort::Assignment(std::move(ids));
}

}  // namespace fixtures
