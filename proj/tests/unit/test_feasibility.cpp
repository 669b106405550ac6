#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

#include "cohort/error.hpp"
#include "cohort/feasibility.hpp"

using namespace cohort;

TEST_CASE("conflict pair placed together violates the exclusion rows") {
  auto r = fixtures::open_roster(2, {0, 0, 1, 1});
  r.conflict_pairs = {{0, 2}};
  const auto bad = check_feasible(r, fixtures::assign({1, 0, 1, 0}));
  REQUIRE(bad.count(ConstraintFamily::kConflict) == 1);
  CHECK(bad.violations[0].company == 1);
  CHECK(bad.violations[0].index == 0);
  CHECK(check_feasible(r, fixtures::assign({1, 0, 0, 1})).feasible());
}

TEST_CASE("company without its international student violates the equality rows") {
  auto r = fixtures::open_roster(2, {0, 0, 1, 1});
  r.tolerances.num_intl = 1;
  r.students[0].international = true;
  r.students[2].international = true;
  CHECK(check_feasible(r, fixtures::assign({1, 0, 0, 1})).feasible());
  const auto bad = check_feasible(r, fixtures::assign({1, 0, 1, 0}));
  CHECK(bad.count(ConstraintFamily::kIntlExact) == 2);
  r.intl_companies = std::vector<int>{0};
  CHECK(check_feasible(r, fixtures::assign({1, 0, 1, 0})).count(ConstraintFamily::kIntlExact) == 1);
}

TEST_CASE("averages are bounded in multiplied-through form") {
  auto r = fixtures::open_roster(2, {0, 0, 1, 1});
  const double aom[] = {10, 20, 30, 40};
  for (int a = 0; a < 4; ++a) r.students[static_cast<std::size_t>(a)].scores[0] = aom[a];
  r.tolerances.avg_score[0] = {20.0, 30.0};
  // Averages 20 and 30 sit exactly on the window.
  CHECK(check_feasible(r, fixtures::assign({0, 1, 0, 1})).feasible());
  // Averages 15 and 35.
  const auto bad = check_feasible(r, fixtures::assign({0, 0, 1, 1}));
  CHECK(bad.count(ConstraintFamily::kMeritMin) == 1);
  CHECK(bad.count(ConstraintFamily::kMeritMax) == 1);
  for (const auto& v : bad.violations) CHECK(v.excess == doctest::Approx(10.0));
  // An empty company satisfies every average row.
  r.tolerances.avg_score[0] = {25.0, 25.0};
  CHECK(check_feasible(r, fixtures::assign({0, 0, 0, 0})).feasible());
}

TEST_CASE("comparisons allow the shared absolute tolerance") {
  auto r = fixtures::open_roster(1, {0, 0});
  r.students[0].scores[0] = 10.0;
  r.students[1].scores[0] = 10.0 + 8e-7;
  r.tolerances.avg_score[0] = {0.0, 10.0};
  CHECK(check_feasible(r, fixtures::assign({0, 0})).feasible());
  r.students[1].scores[0] = 10.0 + 4e-6;
  CHECK_FALSE(check_feasible(r, fixtures::assign({0, 0})).feasible());
}

TEST_CASE("count, gender, race, sport and SAPR windows") {
  auto r = fixtures::open_roster(2, {0, 0, 1, 1});
  r.sports = {"rowing"};
  r.tolerances.max_athletes = {1};
  r.students[0].sports = {0};
  r.students[1].sports = {0};
  r.students[0].gender = Gender::kFemale;
  r.students[1].race = 1;
  r.students[1].task_force = true;
  r.tolerances.count[1] = {0, 0};
  r.tolerances.count[0] = {1, 3};
  r.tolerances.gender_fraction[1] = {0.0, 0.25};
  r.tolerances.race_fraction[1] = {0.0, 0.25};
  r.tolerances.min_sapr = 1;
  r.students[3].sapr_guide = true;
  r.sapr_companies = std::vector<int>{1};
  const auto rep = check_feasible(r, fixtures::assign({0, 0, 1, 1}));
  CHECK(rep.count(ConstraintFamily::kSportMax) == 1);
  CHECK(rep.count(ConstraintFamily::kCountMax) == 1);
  CHECK(rep.count(ConstraintFamily::kGenderMax) == 1);
  CHECK(rep.count(ConstraintFamily::kRaceMax) == 1);
  CHECK_FALSE(rep.has(ConstraintFamily::kSaprMin));
  const auto all_in_one = check_feasible(r, fixtures::assign({0, 0, 0, 0}));
  CHECK(all_in_one.has(ConstraintFamily::kCountMin));
  CHECK(all_in_one.has(ConstraintFamily::kSaprMin));
}

TEST_CASE("battalion lock keeps a student inside the old battalion") {
  auto r = fixtures::open_roster(4, {0, 1, 2, 3});
  r.battalions = {"b1", "b2"};
  r.companies[2].battalion = 1;
  r.companies[3].battalion = 1;
  r.students[0].battalion_locked = true;
  CHECK(admissible_companies(r, 0, false) == std::vector<int>{0, 1});
  CHECK(admissible_companies(r, 0, true) == std::vector<int>{1});
  CHECK(admissible_companies(r, 1, true) == std::vector<int>{0, 2, 3});

  CHECK(check_feasible(r, fixtures::assign({1, 0, 3, 2})).feasible());
  CHECK(check_feasible(r, fixtures::assign({2, 0, 3, 1})).has(ConstraintFamily::kBattalion));
  // Staying put is allowed only without the no-stay rule.
  const auto stay = fixtures::assign({0, 2, 3, 1});
  CHECK(check_feasible(r, stay).feasible());
  const auto strict = check_feasible(r, stay, {.no_stay = true});
  CHECK(strict.has(ConstraintFamily::kBattalion));
  CHECK(strict.has(ConstraintFamily::kNoStay));
}

TEST_CASE("no-stay rule flags every student left in place") {
  const auto r = fixtures::open_roster(3, {0, 1, 2});
  const auto rep = check_feasible(r, fixtures::assign({0, 1, 0}), {.no_stay = true});
  CHECK(rep.count(ConstraintFamily::kNoStay) == 2);
}

TEST_CASE("assignment must be total") {
  const auto r = fixtures::open_roster(2, {0, 1});
  CHECK_THROWS_AS(check_feasible(r, fixtures::assign({0})), InputError);
  CHECK_THROWS_AS(check_feasible(r, fixtures::assign({0, 5})), InputError);
}

TEST_CASE("brute-force search finds a feasible balanced split of six students") {
  auto r = fixtures::open_roster(2, {0, 0, 0, 1, 1, 1});
  const int aom[] = {10, 12, 14, 16, 18, 20};
  for (int a = 0; a < 6; ++a) r.students[static_cast<std::size_t>(a)].scores[0] = aom[a];
  r.tolerances.count[0] = {3, 3};
  r.tolerances.avg_score[0] = {14.5, 15.5};
  r.students[0].gender = Gender::kFemale;
  r.students[5].gender = Gender::kFemale;
  r.tolerances.gender_fraction[1] = {0.25, 0.5};

  long found = 0;
  oracle::for_each_assignment(6, 2, [&](const oracle::Targets& t) {
    const bool mine = check_feasible(r, oracle::to_assignment(t)).feasible();
    CHECK(mine == oracle::feasible(r, t, false));
    found += mine;
  });
  // One woman per side and sums within [43.5, 46.5] leave a single split,
  // {10, 16, 18} against {12, 14, 20}, in either company order.
  CHECK(found == 2);
  const auto hand = fixtures::assign({0, 1, 1, 0, 0, 1});
  CHECK(check_feasible(r, hand).feasible());
  CHECK_FALSE(check_feasible(r, fixtures::assign({0, 1, 0, 1, 1, 0})).feasible());
}
