#include <algorithm>
#include <numeric>

#include "doctest.h"

#include "cohort/error.hpp"
#include "cohort/feasibility.hpp"
#include "cohort/generator.hpp"
#include "cohort/objectives.hpp"

using namespace cohort;

TEST_CASE("enrollment tables") {
  const auto y23 = enrollment_shapes(2023);
  const auto y24 = enrollment_shapes(2024);
  REQUIRE(y23.size() == 30);
  REQUIRE(y24.size() == 30);
  CHECK(std::accumulate(y23.begin(), y23.end(), 0) == 1097);
  CHECK(std::accumulate(y24.begin(), y24.end(), 0) == 1165);
  CHECK(y23[14] == 33);
  CHECK(y24[5] == 42);
  CHECK_THROWS_AS(enrollment_shapes(2022), InputError);
}

TEST_CASE("full-scale academy roster") {
  const auto r = generate(GenSpec::academy(), 11);
  CHECK(validate_roster(r).empty());
  CHECK(r.num_companies() == 30);
  CHECK(r.battalions.size() == 6);
  const auto sizes = r.old_company_sizes();
  CHECK(*std::min_element(sizes.begin(), sizes.end()) >= 33);
  CHECK(*std::max_element(sizes.begin(), sizes.end()) <= 42);
  CHECK(std::count_if(r.students.begin(), r.students.end(), [](const Student& s) { return s.international; }) == 30);
  CHECK(r.tolerances.num_intl == 1);

  double male = 0, white = 0;
  for (const auto& s : r.students) {
    CHECK(s.aom() >= 444.0);
    CHECK(s.aom() <= 680.0);
    CHECK(s.mom() >= 455.0);
    CHECK(s.mom() <= 649.0);
    CHECK(s.prt() >= 86.0);
    CHECK(s.prt() <= 93.0);
    male += s.gender == Gender::kMale;
    white += s.race == r.white_race_class();
  }
  const double n = r.num_students();
  CHECK(male / n == doctest::Approx(0.72).epsilon(0.06));
  CHECK(white / n == doctest::Approx(0.70).epsilon(0.06));
  CHECK(roster_mean(r, Merit::kAom) == doctest::Approx(547.57).epsilon(0.02));
}

TEST_CASE("enrollment preset reproduces the table") {
  const auto r = generate(GenSpec::enrollment(2023), 1);
  CHECK(r.num_students() == 1097);
  CHECK(r.old_company_sizes() == enrollment_shapes(2023));
}

TEST_CASE("desk roster echoes its shape") {
  const auto r = generate(GenSpec::desk(3, 4), 2);
  CHECK(r.num_students() == 12);
  CHECK(r.old_company_sizes() == std::vector<int>{4, 4, 4});
  CHECK(validate_roster(r).empty());
}

TEST_CASE("generation is deterministic in spec and seed") {
  const auto spec = GenSpec::desk(5, 6);
  CHECK(generate(spec, 4) == generate(spec, 4));
  CHECK_FALSE(generate(spec, 4) == generate(spec, 5));
}

TEST_CASE("old assignment and within-battalion rotations are feasible") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = generate(GenSpec::desk(8, 8), seed);
    CHECK(check_feasible(r, Assignment::identity(r)).feasible());
    std::vector<CompanyId> t;
    for (const auto& s : r.students) {
      const int batt = r.companies[static_cast<std::size_t>(s.old_company.value)].battalion;
      const auto members = r.companies_in_battalion(batt);
      const auto at = std::find(members.begin(), members.end(), s.old_company.value) - members.begin();
      t.push_back({members[static_cast<std::size_t>(at + 1) % members.size()]});
    }
    CHECK(check_feasible(r, Assignment(t), {.no_stay = true}).feasible());
  }
}

TEST_CASE("side-constraint-free rosters are open") {
  auto spec = GenSpec::desk(4, 6);
  spec.side_constraints = false;
  const auto r = generate(spec, 3);
  CHECK(r.conflict_pairs.empty());
  CHECK(std::none_of(r.students.begin(), r.students.end(), [](const Student& s) { return s.battalion_locked; }));
  CHECK(r.tolerances.min_sapr == 0);
}

TEST_CASE("contradictory specs are rejected") {
  auto spec = GenSpec::academy();
  spec.international = 5;
  CHECK_THROWS_AS(generate(spec, 1), InputError);
  auto uneven = GenSpec::academy();
  uneven.num_battalions = 7;
  CHECK_THROWS_AS(generate(uneven, 1), InputError);
  auto sizes = GenSpec::desk(3, 3);
  sizes.sizes = {3, 3};
  CHECK_THROWS_AS(generate(sizes, 1), InputError);
}
