#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "cohort/bounds.hpp"
#include "cohort/compiler.hpp"
#include "cohort/error.hpp"
#include "cohort/feasibility.hpp"
#include "cohort/heuristics.hpp"
#include "cohort/io.hpp"
#include "cohort/milp.hpp"
#include "cohort/objectives.hpp"

using namespace cohort;

namespace {

const ModelKind kKinds[] = {ModelKind::kMin, ModelKind::kDev, ModelKind::kPairs};

std::vector<Roster> instances(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Roster> out;
  for (int k = 0; k < count; ++k) out.push_back(oracle::random_instance(rng));
  return out;
}

}  // namespace

TEST_CASE("oracle instances are well formed") {
  for (const auto& r : instances(1, 100)) CHECK(validate_roster(r).empty());
}

TEST_CASE("feasibility checker agrees with the oracle on every assignment") {
  long feasible = 0, total = 0;
  for (const auto& r : instances(2, 120)) {
    oracle::for_each_assignment(r.num_students(), r.num_companies(), [&](const oracle::Targets& t) {
      const auto asg = oracle::to_assignment(t);
      for (bool no_stay : {false, true}) {
        const bool expect = oracle::feasible(r, t, no_stay);
        CHECK(check_feasible(r, asg, {.no_stay = no_stay}).feasible() == expect);
        feasible += expect;
        ++total;
      }
    });
  }
  // The sample must exercise both verdicts.
  CHECK(feasible > 0);
  CHECK(feasible < total);
}

TEST_CASE("compiled rows accept exactly the feasible assignments") {
  for (const auto& r : instances(3, 80)) {
    for (auto kind : kKinds) {
      const auto v = ModelVariant::for_roster(kind, r);
      CompiledModel m;
      try {
        m = compile(r, v);
      } catch (const StructuralInfeasibility&) {
        CHECK_FALSE(oracle::enumerate(r, v).value.has_value());
        continue;
      }
      oracle::for_each_assignment(r.num_students(), r.num_companies(), [&](const oracle::Targets& t) {
        const auto asg = oracle::to_assignment(t);
        const auto x = complete_solution(m, r, asg);
        const bool rows_ok = m.ip.is_feasible(x, kFeasibilityTolerance, kIntegralityTolerance);
        CHECK(rows_ok == check_feasible(r, asg, {.no_stay = v.no_stay()}).feasible());
        CHECK(m.ip.objective_value(x) == doctest::Approx(oracle::objective(r, t, v)).epsilon(1e-12));
      });
    }
  }
}

TEST_CASE("objective evaluators agree with the oracle") {
  for (const auto& r : instances(4, 60)) {
    oracle::for_each_assignment(r.num_students(), r.num_companies(), [&](const oracle::Targets& t) {
      const auto asg = oracle::to_assignment(t);
      for (auto kind : kKinds) {
        const auto v = ModelVariant::for_roster(kind, r);
        CHECK(evaluate_objective(r, asg, v) == doctest::Approx(oracle::objective(r, t, v)).epsilon(1e-12));
      }
    });
  }
}

TEST_CASE("kept plus moved students make up the roster") {
  for (const auto& r : instances(5, 40)) {
    oracle::for_each_assignment(r.num_students(), r.num_companies(), [&](const oracle::Targets& t) {
      int moved = 0;
      for (std::size_t a = 0; a < t.size(); ++a) moved += t[a] != r.students[a].old_company.value;
      CHECK(count_same_company(r, oracle::to_assignment(t)) + moved == r.num_students());
    });
  }
}

TEST_CASE("pair count ignores new-company labels") {
  std::mt19937_64 rng(6);
  for (const auto& r : instances(6, 60)) {
    std::vector<int> perm(static_cast<std::size_t>(r.num_companies()));
    std::iota(perm.begin(), perm.end(), 0);
    oracle::for_each_assignment(r.num_students(), r.num_companies(), [&](const oracle::Targets& t) {
      std::shuffle(perm.begin(), perm.end(), rng);
      auto relabelled = t;
      for (auto& c : relabelled) c = perm[static_cast<std::size_t>(c)];
      CHECK(count_pairs(r, oracle::to_assignment(t)) == count_pairs(r, oracle::to_assignment(relabelled)));
    });
  }
}

TEST_CASE("deviation is non-negative and vanishes only on equal sums") {
  for (const auto& r : instances(7, 60)) {
    oracle::for_each_assignment(r.num_students(), r.num_companies(), [&](const oracle::Targets& t) {
      const auto asg = oracle::to_assignment(t);
      const double d = weighted_deviation(r, asg, r.weights, r.deviation_mode);
      CHECK(d >= 0.0);
      bool equal = true;
      for (auto [merit, w] : {std::pair{Merit::kAom, r.weights.aom}, std::pair{Merit::kMom, r.weights.mom}}) {
        if (w == 0.0) continue;
        const auto sums = company_score_sums(r, asg, merit, r.deviation_mode);
        const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
        equal = equal && *hi - *lo <= 1e-9;
      }
      CHECK((d <= 1e-9) == equal);
    });
  }
}

TEST_CASE("pairs bound holds for every feasible no-stay assignment") {
  for (const auto& r : instances(8, 80)) {
    if (r.num_companies() < 2) continue;
    const auto bound = pairs_lower_bound(r).total;
    oracle::for_each_assignment(r.num_students(), r.num_companies(), [&](const oracle::Targets& t) {
      if (!oracle::feasible(r, t, true)) return;
      CHECK(count_pairs(r, oracle::to_assignment(t)) >= bound);
    });
  }
}

TEST_CASE("solver optimum equals enumeration and sits above the relaxation") {
  int solved = 0;
  for (const auto& r : instances(9, 40)) {
    for (auto kind : kKinds) {
      const auto v = ModelVariant::for_roster(kind, r);
      const auto best = oracle::enumerate(r, v);
      CompiledModel m;
      try {
        m = compile(r, v);
      } catch (const StructuralInfeasibility&) {
        CHECK_FALSE(best.value.has_value());
        continue;
      }
      const auto res = solve_ip(m.ip);
      if (!best.value) {
        CHECK(res.status == SolveStatus::kInfeasible);
        continue;
      }
      REQUIRE(res.status == SolveStatus::kProvenOptimal);
      CHECK(std::abs(res.objective - *best.value) <= 1e-6);
      const auto asg = decode_assignment(m.ip, res.primal);
      CHECK(oracle::feasible(r, oracle::to_targets(asg), v.no_stay()));
      const auto lp = solve_lp(m.ip);
      REQUIRE(lp.status == LpStatus::kOptimal);
      CHECK(lp.objective <= *best.value + 1e-6);
      if (kind == ModelKind::kPairs) CHECK(res.objective >= static_cast<double>(pairs_lower_bound(r).total));
      ++solved;
    }
  }
  CHECK(solved > 20);
}

TEST_CASE("local search keeps feasibility and never worsens") {
  std::mt19937_64 rng(10);
  for (const auto& r : instances(10, 60)) {
    for (auto kind : kKinds) {
      const auto v = ModelVariant::for_roster(kind, r);
      // Start from any feasible assignment the oracle can find.
      std::optional<oracle::Targets> start;
      oracle::for_each_assignment(r.num_students(), r.num_companies(), [&](const oracle::Targets& t) {
        if (!start && oracle::feasible(r, t, v.no_stay())) start = t;
      });
      if (!start) continue;
      LocalSearchOptions opt;
      opt.seed = rng();
      const auto out = local_search(r, oracle::to_assignment(*start), v, opt);
      const auto t = oracle::to_targets(out);
      CHECK(oracle::feasible(r, t, v.no_stay()));
      CHECK(oracle::objective(r, t, v) <= oracle::objective(r, *start, v) + 1e-9);
    }
  }
}

TEST_CASE("rosters round-trip through text") {
  for (const auto& r : instances(11, 100)) {
    CHECK(parse_roster(roster_csv(r), roster_config(r)) == r);
  }
}
