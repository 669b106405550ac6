#include "doctest.h"
#include "fixtures.hpp"

#include "cohort/bounds.hpp"
#include "cohort/compiler.hpp"
#include "cohort/error.hpp"
#include "cohort/feasibility.hpp"
#include "cohort/generator.hpp"
#include "cohort/objectives.hpp"
#include "cohort/pipeline.hpp"

using namespace cohort;

TEST_CASE("MIN on a desk roster reaches zero") {
  const auto r = generate(GenSpec::desk(4, 4), 1);
  const auto res = solve_roster(r, ModelVariant::min());
  REQUIRE(res.status == SolveStatus::kProvenOptimal);
  CHECK(res.objective == 0.0);
  REQUIRE(res.assignment);
  CHECK(check_feasible(r, *res.assignment).feasible());
  CHECK(certify(res, r, ModelVariant::min()).status == CertificateStatus::kCertifiedOptimal);
}

TEST_CASE("PAIRS uses the pairs bound to stop") {
  auto spec = GenSpec::desk(3, 4);
  spec.side_constraints = false;
  const auto r = generate(spec, 2);
  RosterSolveOptions opt;
  opt.warm_start = WarmStart::kDeal;
  const auto res = solve_roster(r, ModelVariant::pairs(), opt);
  REQUIRE(res.status == SolveStatus::kProvenOptimal);
  CHECK(res.objective == static_cast<double>(pairs_lower_bound(r).total));
  CHECK(res.gap == 0.0);
}

TEST_CASE("DEV objective matches the recomputed deviation") {
  const auto r = generate(GenSpec::desk(3, 3), 4);
  const auto v = ModelVariant::for_roster(ModelKind::kDev, r);
  RosterSolveOptions opt;
  opt.solver.time_limit_s = 30;
  const auto res = solve_roster(r, v, opt);
  REQUIRE(res.has_solution());
  CHECK(res.objective == doctest::Approx(weighted_deviation(r, *res.assignment, v.weights, v.deviation)).epsilon(1e-9));
}

TEST_CASE("warm start modes") {
  const auto r = generate(GenSpec::desk(4, 4), 3);
  const auto m = compile(r, ModelVariant::pairs());
  CHECK_FALSE(build_warm_start(m, r, WarmStart::kNone, 0, 10, 10).has_value());
  const auto deal = build_warm_start(m, r, WarmStart::kDeal, 0, 10, 10);
  REQUIRE(deal.has_value());
  CHECK(deal->size() == static_cast<std::size_t>(m.ip.num_cols()));
  const auto ls = build_warm_start(m, r, WarmStart::kDealLocalSearch, 1, 1000, 100000);
  REQUIRE(ls.has_value());
  CHECK(m.ip.objective_value(*ls) <= m.ip.objective_value(*deal) + 1e-9);
  CHECK(parse_warm_start("deal+ls") == WarmStart::kDealLocalSearch);
  CHECK(to_string(WarmStart::kDeal) == "deal");
  CHECK_FALSE(parse_warm_start("all").has_value());
}

TEST_CASE("structural infeasibility surfaces before search") {
  auto r = fixtures::open_roster(2, {0, 1});
  r.battalions = {"b1", "b2"};
  r.companies[1].battalion = 1;
  r.students[0].battalion_locked = true;
  CHECK_THROWS_AS(solve_roster(r, ModelVariant::pairs()), StructuralInfeasibility);
}

TEST_CASE("infeasible tolerances give an infeasible status") {
  auto r = fixtures::open_roster(2, {0, 1, 1});
  r.tolerances.count[0] = {2, 2};
  const auto res = solve_roster(r, ModelVariant::min());
  CHECK(res.status == SolveStatus::kInfeasible);
}
