#include "doctest.h"
#include "fixtures.hpp"

#include "cohort/compiler.hpp"
#include "cohort/error.hpp"
#include "cohort/generator.hpp"
#include "cohort/objectives.hpp"

using namespace cohort;

namespace {

Roster small_roster() {
  auto r = fixtures::open_roster(3, {0, 0, 1, 1, 2});
  r.sports = {"rowing"};
  r.tolerances.max_athletes = {2};
  r.students[1].sports = {0};
  r.conflict_pairs = {{0, 2}, {1, 4}};
  r.students[3].battalion_locked = true;
  r.students[0].scores = {10, 20, 90};
  r.students[4].scores = {30, 5, 88};
  return r;
}

}  // namespace

TEST_CASE("MIN emits the shared blocks and no no-stay rows") {
  const auto r = small_roster();
  const auto m = compile(r, ModelVariant::min());
  const int A = 5, C = 3;
  CHECK(m.ip.num_cols() == A * C);
  CHECK(m.ip.count_cols(VarType::kBinary) == A * C);
  CHECK(m.ip.count_rows(ConstraintFamily::kOneCompany) == A);
  CHECK(m.ip.count_rows(ConstraintFamily::kCountMax) == kNumQualities * C);
  CHECK(m.ip.count_rows(ConstraintFamily::kCountMin) == kNumQualities * C);
  CHECK(m.ip.count_rows(ConstraintFamily::kMeritMax) == kNumMerits * C);
  CHECK(m.ip.count_rows(ConstraintFamily::kGenderMin) == kNumGenders * C);
  CHECK(m.ip.count_rows(ConstraintFamily::kRaceMax) == 2 * C);
  CHECK(m.ip.count_rows(ConstraintFamily::kSportMax) == C);
  CHECK(m.ip.count_rows(ConstraintFamily::kConflict) == 2 * C);
  CHECK(m.ip.count_rows(ConstraintFamily::kSaprMin) == C);
  CHECK(m.ip.count_rows(ConstraintFamily::kIntlExact) == C);
  CHECK(m.ip.count_rows(ConstraintFamily::kBattalion) == 1);
  CHECK(m.ip.count_rows(ConstraintFamily::kNoStay) == 0);
  CHECK(m.y_offset == -1);
  CHECK(m.u_offset == -1);
  CHECK(m.ip.variable(m.x.col(2, 1)).name == "x(s3,C2)");
}

TEST_CASE("MIN objective at the identity vector equals the roster size") {
  const auto r = small_roster();
  const auto m = compile(r, ModelVariant::min());
  const auto x = complete_solution(m, r, Assignment::identity(r));
  CHECK(m.ip.objective_value(x) == 5.0);
}

TEST_CASE("DEV adds y and z per ordered company pair") {
  auto r = small_roster();
  r.weights = {0.25, 0.75};
  const auto m = compile(r, ModelVariant::for_roster(ModelKind::kDev, r));
  const int C = 3, pairs = C * (C - 1);
  CHECK(m.ip.count_cols(VarType::kContinuous) == 2 * pairs);
  CHECK(m.company_pairs.size() == static_cast<std::size_t>(pairs));
  CHECK(m.ip.count_rows(ConstraintFamily::kAomDeviation) == 2 * pairs);
  CHECK(m.ip.count_rows(ConstraintFamily::kMomDeviation) == 2 * pairs);
  CHECK(m.ip.count_rows(ConstraintFamily::kNoStay) == 5);
  CHECK(m.ip.objective()[static_cast<std::size_t>(m.y_offset)] == 0.25);
  CHECK(m.ip.objective()[static_cast<std::size_t>(m.z_offset)] == 0.75);

  const auto asg = fixtures::assign({1, 2, 0, 2, 0});
  const auto x = complete_solution(m, r, asg);
  CHECK(m.ip.max_violation(x) <= 1e-9);
  CHECK(m.ip.objective_value(x) == doctest::Approx(weighted_deviation(r, asg, r.weights)));
}

TEST_CASE("PAIRS adds one u per same-old-company pair") {
  const auto r = small_roster();
  const auto m = compile(r, ModelVariant::pairs());
  // Old companies of sizes 2, 2, 1.
  REQUIRE(m.student_pairs == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  CHECK(m.ip.count_cols(VarType::kBinary) == 15 + 2);
  CHECK(m.ip.count_rows(ConstraintFamily::kPairLink) == 2 * 3);
  CHECK(m.ip.variable(m.u_offset + 1).name == "u(s3,s4)");

  const auto asg = fixtures::assign({1, 1, 0, 0, 1});
  const auto x = complete_solution(m, r, asg);
  CHECK(x[static_cast<std::size_t>(m.u_offset)] == 1.0);
  CHECK(x[static_cast<std::size_t>(m.u_offset + 1)] == 1.0);
  CHECK(m.ip.objective_value(x) == 2.0);
}

TEST_CASE("pair set lists unordered pairs in lexicographic order") {
  const auto r = fixtures::open_roster(2, {1, 0, 1, 1, 0});
  CHECK(same_old_company_pairs(r) ==
        std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 4}, {2, 3}});
}

TEST_CASE("compilation is deterministic") {
  const auto r = generate(GenSpec::desk(4, 5), 3);
  for (auto kind : {ModelKind::kMin, ModelKind::kDev, ModelKind::kPairs}) {
    const auto v = ModelVariant::for_roster(kind, r);
    CHECK(compile(r, v).ip == compile(r, v).ip);
  }
}

TEST_CASE("compiler rejects unusable rosters") {
  Roster empty = fixtures::open_roster(2, {});
  CHECK_THROWS_AS(compile(empty, ModelVariant::min()), InputError);

  auto bad = fixtures::open_roster(2, {0, 1});
  bad.students[1].id = bad.students[0].id;
  CHECK_THROWS_AS(compile(bad, ModelVariant::min()), InputError);

  const auto single = fixtures::open_roster(1, {0, 0});
  CHECK_NOTHROW(compile(single, ModelVariant::min()));
  CHECK_THROWS_AS(compile(single, ModelVariant::pairs()), StructuralInfeasibility);

  // A locked student alone in its battalion cannot move under no-stay.
  auto lonely = fixtures::open_roster(2, {0, 1});
  lonely.battalions = {"b1", "b2"};
  lonely.companies[1].battalion = 1;
  lonely.students[0].battalion_locked = true;
  CHECK_NOTHROW(compile(lonely, ModelVariant::min()));
  CHECK_THROWS_AS(compile(lonely, ModelVariant::dev({0.5, 0.5})), StructuralInfeasibility);
}

TEST_CASE("counts follow the closed-form formulas at desk scale") {
  const auto r = generate(GenSpec::desk(8, 8), 1);
  const int A = r.num_students(), C = r.num_companies();
  const auto R = static_cast<int>(r.conflict_pairs.size());
  const auto min = compile(r, ModelVariant::min());
  CHECK(min.ip.count_cols(VarType::kBinary) == A * C);
  CHECK(min.ip.count_rows(ConstraintFamily::kOneCompany) == A);
  CHECK(min.ip.count_rows(ConstraintFamily::kConflict) == R * C);
  const auto dev = compile(r, ModelVariant::for_roster(ModelKind::kDev, r));
  CHECK(dev.ip.count_cols(VarType::kContinuous) == 2 * C * (C - 1));
  const auto pairs = compile(r, ModelVariant::pairs());
  long long t = 0;
  for (int n : r.old_company_sizes()) t += 1LL * n * (n - 1) / 2;
  CHECK(pairs.ip.count_cols(VarType::kBinary) == A * C + t);
  CHECK(pairs.ip.count_rows(ConstraintFamily::kPairLink) == t * C);
}
