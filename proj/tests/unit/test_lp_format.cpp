#include <algorithm>
#include <filesystem>

#include "doctest.h"
#include "fixtures.hpp"

#include "cohort/compiler.hpp"
#include "cohort/error.hpp"
#include "cohort/io.hpp"
#include "cohort/lp_format.hpp"

using namespace cohort;

TEST_CASE("toy model has the fixed section skeleton") {
  IpModel m;
  const int a = m.add_binary("a");
  const int b = m.add_variable("b", 0.0, kInfinity, VarType::kContinuous);
  m.set_objective(a, 1.0);
  m.set_objective(b, -2.5);
  const Term le[] = {{a, 1.0}, {b, 1.0}};
  m.add_row("cap", le, RowSense::kLe, 4.0);
  const std::string text = to_lp_string(m);
  CHECK(text.find("Minimize\n obj: 1 a - 2.5 b\n") != std::string::npos);
  CHECK(text.find("Subject To\n cap: 1 a + 1 b <= 4\n") != std::string::npos);
  CHECK(text.find("Binaries\n a\n") != std::string::npos);
  CHECK(text.rfind("End\n") == text.size() - 4);
  const auto order = {text.find("Minimize"), text.find("Subject To"), text.find("Bounds"),
                      text.find("Binaries"), text.find("End")};
  CHECK(std::is_sorted(order.begin(), order.end()));
}

TEST_CASE("row senses map to their tokens") {
  IpModel m;
  const int a = m.add_variable("a", -1.0, 3.0, VarType::kContinuous);
  const int f = m.add_variable("f", -kInfinity, kInfinity, VarType::kContinuous);
  const int e = m.add_variable("e", 2.0, 2.0, VarType::kContinuous);
  const Term t[] = {{a, 1.0}, {f, -1.0}};
  m.add_row("ge", t, RowSense::kGe, 1.0);
  m.add_row("eq", t, RowSense::kEq, 0.5);
  m.add_row("le", t, RowSense::kLe, -2.0);
  const Term only_e[] = {{e, 1.0}};
  m.add_row("fix", only_e, RowSense::kEq, 2.0);
  const std::string text = to_lp_string(m);
  CHECK(text.find(" ge: 1 a - 1 f >= 1\n") != std::string::npos);
  CHECK(text.find(" eq: 1 a - 1 f = 0.5\n") != std::string::npos);
  CHECK(text.find(" le: 1 a - 1 f <= -2\n") != std::string::npos);
  CHECK(text.find(" -1 <= a <= 3\n") != std::string::npos);
  CHECK(text.find(" f free\n") != std::string::npos);
  CHECK(text.find(" e = 2\n") != std::string::npos);
  CHECK(text.find("Binaries") == std::string::npos);
}

TEST_CASE("compiled models keep their names and export identically") {
  auto r = fixtures::open_roster(2, {0, 1, 1});
  r.conflict_pairs = {{1, 2}};
  const auto m = compile(r, ModelVariant::pairs());
  const std::string text = to_lp_string(m.ip);
  CHECK(text.find("x(s1,C2)") != std::string::npos);
  CHECK(text.find("u(s2,s3)") != std::string::npos);
  CHECK(text.find(" nostay(s1): 1 x(s1,C1) = 0\n") != std::string::npos);
  CHECK(text == to_lp_string(compile(r, ModelVariant::pairs()).ip));

  const auto dir = std::filesystem::temp_directory_path() / "cohort_lp_format_test";
  std::filesystem::create_directories(dir);
  export_lp(m.ip, dir / "m.lp");
  CHECK(read_file(dir / "m.lp") == text);
  CHECK_THROWS_AS(export_lp(m.ip, dir / "missing" / "m.lp"), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("model without columns cannot be exported") {
  CHECK_THROWS_AS(to_lp_string(IpModel{}), InputError);
}
