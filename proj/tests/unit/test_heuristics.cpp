#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

#include "cohort/bounds.hpp"
#include "cohort/compiler.hpp"
#include "cohort/feasibility.hpp"
#include "cohort/generator.hpp"
#include "cohort/heuristics.hpp"
#include "cohort/objectives.hpp"

using namespace cohort;

TEST_CASE("deal sends the k-th student of a company k+1 steps along") {
  const auto r = fixtures::open_roster(3, {0, 0, 0, 1, 2});
  CHECK(cyclic_deal(r) == fixtures::assign({1, 2, 1, 2, 0}));
}

TEST_CASE("deal on thirty companies of thirty-nine") {
  GenSpec spec = GenSpec::academy();
  spec.sizes.assign(30, 39);
  spec.side_constraints = false;
  const auto r = generate(spec, 1);
  const auto deal = cyclic_deal(r);
  CHECK(count_pairs(r, deal) == 300);
  CHECK(count_same_company(r, deal) == 0);
}

TEST_CASE("deal on companies no larger than the other companies makes no pairs") {
  const auto r = fixtures::open_roster(4, {0, 0, 0, 1, 1, 2, 3, 3, 3});
  CHECK(count_pairs(r, cyclic_deal(r)) == 0);
}

TEST_CASE("deal on three companies of three matches the exhaustive optimum") {
  const auto r = fixtures::open_roster(3, {0, 0, 0, 1, 1, 1, 2, 2, 2});
  CHECK(count_pairs(r, cyclic_deal(r)) == 3);
  CHECK(*oracle::enumerate(r, ModelVariant::pairs()).value == 3.0);
}

TEST_CASE("deal leaves everyone in place with one company") {
  const auto r = fixtures::open_roster(1, {0, 0});
  CHECK(cyclic_deal(r) == Assignment::identity(r));
}

TEST_CASE("rounding picks the largest admissible x") {
  auto r = fixtures::open_roster(3, {0, 1});
  const auto m = compile(r, ModelVariant::min());
  const std::vector<double> x{0.6, 0.3, 0.1, 0.2, 0.2, 0.6};
  CHECK(round_assignment(r, m.x, x, false) == fixtures::assign({0, 2}));
  CHECK(round_assignment(r, m.x, x, true) == fixtures::assign({1, 2}));
  const std::vector<double> ties{0.5, 0.5, 0.0, 0.0, 0.5, 0.5};
  CHECK(round_assignment(r, m.x, ties, false) == fixtures::assign({0, 1}));
}

TEST_CASE("local search leaves an optimal start alone") {
  const auto r = fixtures::open_roster(2, {0, 1});
  const auto start = fixtures::assign({1, 0});
  LocalSearchStats stats;
  CHECK(local_search(r, start, ModelVariant::min(), {}, &stats) == start);
  CHECK(stats.moves == 0);
  CHECK(stats.objective == 0.0);
}

TEST_CASE("local search with no budget returns the start") {
  const auto r = fixtures::open_roster(2, {0, 0, 1, 1});
  const auto start = Assignment::identity(r);
  LocalSearchOptions opt;
  opt.max_moves = 0;
  CHECK(local_search(r, start, ModelVariant::min(), opt) == start);
}

TEST_CASE("one swap removes a doubled pair") {
  // Four old companies of two; every pair starts together in another company.
  auto r = fixtures::open_roster(4, {0, 0, 1, 1, 2, 2, 3, 3});
  r.tolerances.count[0] = {2, 2};
  const auto start = fixtures::assign({1, 1, 0, 0, 3, 3, 2, 2});
  REQUIRE(count_pairs(r, start) == 4);
  // The best single swap that respects no-stay splits two pairs.
  int best = 4;
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) {
      auto t = oracle::to_targets(start);
      std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]);
      if (oracle::feasible(r, t, true)) best = std::min(best, static_cast<int>(count_pairs(r, oracle::to_assignment(t))));
    }
  }
  CHECK(best == 2);
  const auto out = local_search(r, start, ModelVariant::pairs());
  CHECK(count_pairs(r, out) <= 2);
  CHECK(check_feasible(r, out, {.no_stay = true}).feasible());
}

TEST_CASE("local search never worsens a feasible start") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto r = generate(GenSpec::desk(4, 5), seed);
    for (auto kind : {ModelKind::kMin, ModelKind::kDev, ModelKind::kPairs}) {
      const auto v = ModelVariant::for_roster(kind, r);
      // A within-battalion rotation is feasible by construction and moves everyone.
      const auto start = cyclic_deal(r);
      const bool was_feasible = check_feasible(r, start, {.no_stay = v.no_stay()}).feasible();
      LocalSearchOptions opt;
      opt.seed = seed;
      opt.max_evaluations = 200'000;
      const auto out = local_search(r, start, v, opt);
      if (was_feasible) {
        CHECK(check_feasible(r, out, {.no_stay = v.no_stay()}).feasible());
        CHECK(evaluate_objective(r, out, v) <= evaluate_objective(r, start, v) + 1e-9);
      }
      CHECK(out == local_search(r, start, v, opt));
    }
  }
}

TEST_CASE("local search repairs a violated start on a loose roster") {
  const auto r = generate(GenSpec::desk(3, 4), 8);
  const auto start = Assignment::identity(r);
  LocalSearchStats stats;
  const auto out = local_search(r, start, ModelVariant::pairs(), {}, &stats);
  if (stats.violation == 0.0) {
    CHECK(check_feasible(r, out, {.no_stay = true}).feasible());
    CHECK(count_pairs(r, out) >= pairs_lower_bound(r).total);
  }
}
