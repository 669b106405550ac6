#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"

#include "cohort/compiler.hpp"
#include "cohort/generator.hpp"
#include "cohort/simplex.hpp"

using namespace cohort;

namespace {

// Reduced costs must have the sign that makes each nonbasic bound optimal.
void check_optimality(const IpModel& m, const LpSolution& s) {
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(m.max_violation(s.primal) <= 1e-6);
  for (int j = 0; j < m.num_cols(); ++j) {
    const auto& v = m.variable(j);
    const double x = s.primal[static_cast<std::size_t>(j)];
    const double d = s.reduced_costs[static_cast<std::size_t>(j)];
    if (x > v.lower + 1e-7) CHECK(d <= 1e-7);
    if (x < v.upper - 1e-7) CHECK(d >= -1e-7);
  }
}

}  // namespace

TEST_CASE("single bounded column") {
  IpModel m;
  const int x = m.add_variable("x", 0.0, 1.0, VarType::kContinuous);
  m.set_objective(x, 1.0);
  const Term t[] = {{x, 1.0}};
  m.add_row("lo", t, RowSense::kGe, 0.3);
  const auto s = solve_lp(m);
  check_optimality(m, s);
  CHECK(s.primal[0] == doctest::Approx(0.3));
  CHECK(s.objective == doctest::Approx(0.3));
}

TEST_CASE("contradictory rows are infeasible") {
  IpModel m;
  const int x = m.add_variable("x", -kInfinity, kInfinity, VarType::kContinuous);
  const Term t[] = {{x, 1.0}};
  m.add_row("up", t, RowSense::kLe, 0.0);
  m.add_row("down", t, RowSense::kGe, 1.0);
  CHECK(solve_lp(m).status == LpStatus::kInfeasible);
}

TEST_CASE("unbounded direction is detected") {
  IpModel m;
  const int x = m.add_variable("x", 0.0, kInfinity, VarType::kContinuous);
  const int y = m.add_variable("y", 0.0, kInfinity, VarType::kContinuous);
  m.set_objective(x, -1.0);
  const Term t[] = {{x, 1.0}, {y, -1.0}};
  m.add_row("r", t, RowSense::kLe, 1.0);
  CHECK(solve_lp(m).status == LpStatus::kUnbounded);
}

TEST_CASE("small production problem") {
  // max 3a + 5b s.t. a <= 4, 2b <= 12, 3a + 2b <= 18 has optimum 36 at (2, 6).
  IpModel m;
  const int a = m.add_variable("a", 0.0, kInfinity, VarType::kContinuous);
  const int b = m.add_variable("b", 0.0, kInfinity, VarType::kContinuous);
  m.set_objective(a, -3.0);
  m.set_objective(b, -5.0);
  const Term r1[] = {{a, 1.0}};
  const Term r2[] = {{b, 2.0}};
  const Term r3[] = {{a, 3.0}, {b, 2.0}};
  m.add_row("r1", r1, RowSense::kLe, 4.0);
  m.add_row("r2", r2, RowSense::kLe, 12.0);
  m.add_row("r3", r3, RowSense::kLe, 18.0);
  const auto s = solve_lp(m);
  check_optimality(m, s);
  CHECK(s.objective == doctest::Approx(-36.0));
  CHECK(s.primal[0] == doctest::Approx(2.0));
  CHECK(s.primal[1] == doctest::Approx(6.0));
  // Duals of the binding rows: 3a + 2b carries 1, 2b carries 3/2.
  CHECK(std::abs(s.row_duals[2]) == doctest::Approx(1.0));
  CHECK(std::abs(s.row_duals[1]) == doctest::Approx(1.5));
}

TEST_CASE("bound changes are honoured and restorable") {
  IpModel m;
  const int a = m.add_binary("a");
  const int b = m.add_binary("b");
  m.set_objective(a, -1.0);
  m.set_objective(b, -1.0);
  const Term t[] = {{a, 1.0}, {b, 1.0}};
  m.add_row("r", t, RowSense::kLe, 1.5);
  LpSolver lp(m);
  CHECK(lp.solve() == LpStatus::kOptimal);
  CHECK(lp.objective() == doctest::Approx(-1.5));
  lp.set_column_bounds(a, 0.0, 0.0);
  CHECK(lp.solve() == LpStatus::kOptimal);
  CHECK(lp.objective() == doctest::Approx(-1.0));
  CHECK(lp.column_upper(a) == 0.0);
  lp.set_column_bounds(b, 1.0, 1.0);
  lp.set_column_bounds(a, 1.0, 1.0);
  CHECK(lp.solve() == LpStatus::kInfeasible);
  lp.restore_bounds();
  CHECK(lp.solve() == LpStatus::kOptimal);
  CHECK(lp.objective() == doctest::Approx(-1.5));
}

TEST_CASE("cutoff stops once the bound passes it") {
  IpModel m;
  const int a = m.add_binary("a");
  const int b = m.add_binary("b");
  m.set_objective(a, 1.0);
  m.set_objective(b, 1.0);
  const Term t[] = {{a, 1.0}, {b, 1.0}};
  m.add_row("r", t, RowSense::kGe, 1.5);
  LpSolver lp(m);
  CHECK(lp.solve(1.0) == LpStatus::kCutoff);
  lp.reset_to_slack_basis();
  CHECK(lp.solve(2.0) == LpStatus::kOptimal);
  CHECK(lp.objective() == doctest::Approx(1.5));
}

TEST_CASE("iteration limit is reported, not mistaken for optimality") {
  const auto r = generate(GenSpec::desk(4, 4), 2);
  const auto m = compile(r, ModelVariant::pairs());
  LpOptions opt;
  opt.iteration_limit = 1;
  CHECK(solve_lp(m.ip, opt).status == LpStatus::kIterationLimit);
}

TEST_CASE("relaxation of a no-stay-free roster reaches zero") {
  const auto r = generate(GenSpec::desk(4, 4), 5);
  const auto m = compile(r, ModelVariant::min());
  const auto s = solve_lp(m.ip);
  check_optimality(m.ip, s);
  CHECK(std::abs(s.objective) <= 1e-7);
}

TEST_CASE("warm-started basis survives a reload") {
  const auto r = generate(GenSpec::desk(4, 4), 1);
  const auto m = compile(r, ModelVariant::pairs());
  LpSolver lp(m.ip);
  REQUIRE(lp.solve() == LpStatus::kOptimal);
  const double first = lp.objective();
  const auto basis = lp.basis();
  LpSolver again(m.ip);
  again.load_basis(basis);
  REQUIRE(again.solve() == LpStatus::kOptimal);
  CHECK(again.objective() == doctest::Approx(first));
  CHECK(again.iterations() <= 1);
  check_optimality(m.ip, again.solution());
}
