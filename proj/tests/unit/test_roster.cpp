#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"

#include "cohort/error.hpp"
#include "cohort/roster.hpp"

using namespace cohort;

namespace {

bool contains(const std::vector<Violation>& vs, ViolationKind kind, const std::string& subject) {
  return std::find(vs.begin(), vs.end(), Violation{kind, subject}) != vs.end();
}

}  // namespace

TEST_CASE("well-formed two-company roster has no defects") {
  const auto r = fixtures::open_roster(2, {0, 0, 1, 1});
  CHECK(validate_roster(r).empty());
}

TEST_CASE("duplicate student id is reported") {
  auto r = fixtures::open_roster(2, {0, 0, 1, 1});
  r.students[0].id = "0001";
  r.students[2].id = "0001";
  const auto vs = validate_roster(r);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0] == Violation{ViolationKind::kDuplicateId, "0001"});
}

TEST_CASE("count window with min above max is an inverted bound") {
  auto r = fixtures::open_roster(2, {0, 1});
  r.tolerances.count[0] = {40, 35};
  const auto vs = validate_roster(r);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0] == Violation{ViolationKind::kInvertedBound, "all"});
}

TEST_CASE("structural defects are collected, not thrown") {
  auto r = fixtures::open_roster(2, {0, 1});
  r.students[0].old_company = {7};
  r.students[1].scores[0] = -1.0;
  r.students[1].race = 9;
  r.conflict_pairs = {{0, 0}};
  r.weights = {0.7, 0.7};
  r.tolerances.gender_fraction[0] = {0.0, 1.5};
  r.tolerances.race_fraction.clear();
  r.sapr_companies = std::vector<int>{0, 0};
  const auto vs = validate_roster(r);
  CHECK(contains(vs, ViolationKind::kUnknownCompany, "s1"));
  CHECK(contains(vs, ViolationKind::kBadScore, "s2"));
  CHECK(contains(vs, ViolationKind::kUnknownRace, "s2"));
  CHECK(std::any_of(vs.begin(), vs.end(), [](const Violation& v) { return v.kind == ViolationKind::kBadConflictPair; }));
  CHECK(contains(vs, ViolationKind::kBadWeights, "weights"));
  CHECK(std::any_of(vs.begin(), vs.end(), [](const Violation& v) { return v.kind == ViolationKind::kFractionOutOfRange; }));
  CHECK(contains(vs, ViolationKind::kToleranceShape, "race_fraction"));
  CHECK(contains(vs, ViolationKind::kBadCompanySubset, "sapr_companies"));
}

TEST_CASE("battalions must hold equally many companies") {
  auto r = fixtures::open_roster(3, {0, 1, 2});
  r.battalions = {"b1", "b2"};
  r.companies[2].battalion = 1;
  const auto vs = validate_roster(r);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].kind == ViolationKind::kUnevenBattalions);
}

TEST_CASE("empty company list is a defect") {
  Roster r;
  const auto vs = validate_roster(r);
  REQUIRE_FALSE(vs.empty());
  CHECK(vs[0].kind == ViolationKind::kNoCompanies);
}

TEST_CASE("roster lookups") {
  auto r = fixtures::open_roster(3, {2, 0, 2, 1});
  CHECK(r.old_company_sizes() == std::vector<int>{1, 1, 2});
  CHECK(r.find_student("s3") == 2);
  CHECK_FALSE(r.find_student("nobody").has_value());
  CHECK(r.find_company("C2") == 1);
  CHECK(r.sapr_company_list() == std::vector<int>{0, 1, 2});
  r.intl_companies = std::vector<int>{1};
  CHECK(r.intl_company_list() == std::vector<int>{1});
  CHECK(r.companies_in_battalion(0) == std::vector<int>{0, 1, 2});
  CHECK(r.white_race_class() == 0);
}

TEST_CASE("identity assignment keeps every old company") {
  const auto r = fixtures::open_roster(3, {2, 0, 1});
  const auto id = Assignment::identity(r);
  REQUIRE(id.size() == 3);
  CHECK(id[0].value == 2);
  CHECK(id[1].value == 0);
  CHECK(id[2].value == 1);
}

TEST_CASE("require_total rejects partial or out-of-range assignments") {
  const auto r = fixtures::open_roster(2, {0, 1});
  CHECK_NOTHROW(require_total(r, fixtures::assign({1, 0})));
  CHECK_THROWS_AS(require_total(r, fixtures::assign({1})), InputError);
  CHECK_THROWS_AS(require_total(r, fixtures::assign({1, 2})), InputError);
  CHECK_THROWS_AS(require_total(r, fixtures::assign({-1, 0})), InputError);
}

TEST_CASE("quality groups") {
  Student s;
  CHECK(s.in_group(Quality::kAll));
  CHECK_FALSE(s.in_group(Quality::kTaskForce));
  s.prior_service = true;
  CHECK(s.in_group(Quality::kPriorService));
}
