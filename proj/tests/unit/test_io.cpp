#include <filesystem>

#include "doctest.h"
#include "fixtures.hpp"

#include "cohort/error.hpp"
#include "cohort/generator.hpp"
#include "cohort/io.hpp"

using namespace cohort;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("generated roster survives a text round trip") {
  auto r = generate(GenSpec::desk(4, 5), 9);
  r.deviation_mode = DeviationMode::kCentered;
  r.weights = {0.3, 0.7};
  r.sapr_companies = std::vector<int>{0, 2};
  r.intl_companies = std::vector<int>{};
  const auto back = parse_roster(roster_csv(r), roster_config(r));
  CHECK(back == r);
}

TEST_CASE("roster files live next to their config") {
  TempDir dir("cohort_io_roster");
  const auto r = generate(GenSpec::desk(3, 4), 1);
  write_roster(r, dir.path / "r.csv");
  CHECK(fs::exists(dir.path / "r.cfg"));
  CHECK(companion_path(dir.path / "r.csv") == dir.path / "r.cfg");
  CHECK(read_roster(dir.path / "r.csv") == r);
  CHECK_THROWS_AS(read_roster(dir.path / "missing.csv"), InputError);
}

TEST_CASE("roster csv header and malformed rows") {
  const auto r = fixtures::open_roster(2, {0, 1});
  const auto csv = roster_csv(r);
  CHECK(csv.rfind("id,aom,mom,prt,gender,race,old_company,battalion,task_force,prior_service,sapr,"
                  "international,batt_locked,sports\n", 0) == 0);
  const auto cfg = roster_config(r);
  CHECK_THROWS_AS(parse_roster(csv + "s3,1,2\n", cfg), InputError);
  CHECK_THROWS_AS(parse_roster(csv, cfg + "bogus_key = 1\n"), InputError);
  std::string wrong_company = csv;
  wrong_company.replace(wrong_company.find(",C1,"), 4, ",C9,");
  CHECK_THROWS_AS(parse_roster(wrong_company, cfg), InputError);
}

TEST_CASE("assignment round trip") {
  const auto r = fixtures::open_roster(3, {0, 1, 2});
  const auto asg = fixtures::assign({2, 0, 1});
  const auto csv = assignment_csv(r, asg);
  CHECK(csv == "id,old_company,new_company\ns1,C1,C3\ns2,C2,C1\ns3,C3,C2\n");
  CHECK(parse_assignment(r, csv) == asg);
  CHECK_THROWS_AS(parse_assignment(r, "id,old_company,new_company\ns1,C1,C3\n"), InputError);
  CHECK_THROWS_AS(parse_assignment(r, "id,old_company,new_company\ns1,C1,C3\ns2,C2,C1\nzz,C3,C2\n"),
                  InputError);
  CHECK_THROWS_AS(parse_assignment(r, "id,old_company,new_company\ns1,C1,C7\ns2,C2,C1\ns3,C3,C2\n"),
                  InputError);

  TempDir dir("cohort_io_assignment");
  write_assignment(r, asg, dir.path / "a.csv");
  CHECK(read_assignment(r, dir.path / "a.csv") == asg);
  CHECK(sidecar_path(dir.path / "a.csv") == dir.path / "a.json");
}

TEST_CASE("result sidecar round trip") {
  ResultRecord rec;
  rec.tool_version = std::string(version());
  rec.roster_path = "r.csv";
  rec.variant = ModelVariant::dev({0.25, 0.75}, DeviationMode::kCentered);
  rec.seed = 17;
  rec.options.solver.seed = 17;
  rec.options.solver.time_limit_s = 12.5;
  rec.options.solver.external_lb = 3.0;
  rec.options.warm_start = WarmStart::kDeal;
  rec.status = SolveStatus::kFeasibleGap;
  rec.objective = 10.5;
  rec.best_bound = 2.25;
  rec.gap = 3.6666666666666665;
  rec.nodes = 41;
  rec.lp_iterations = 977;
  rec.root_lp_bound = 1.5;
  Certificate cert;
  cert.status = CertificateStatus::kFeasible;
  cert.reported_objective = 10.5;
  cert.recomputed_objective = 10.5;
  cert.feasible = true;
  cert.notes = {"checked"};
  rec.certificate = cert;

  const auto text = result_json(rec);
  const auto back = parse_result_json(text);
  CHECK(back.tool_version == rec.tool_version);
  CHECK(back.roster_path == "r.csv");
  CHECK(back.variant.kind == ModelKind::kDev);
  CHECK(back.variant.weights == rec.variant.weights);
  CHECK(back.variant.deviation == DeviationMode::kCentered);
  CHECK(back.seed == 17);
  CHECK(back.options == rec.options);
  CHECK(back.status == rec.status);
  CHECK(back.objective == rec.objective);
  CHECK(back.gap == rec.gap);
  CHECK(back.nodes == 41);
  CHECK(back.root_lp_bound == rec.root_lp_bound);
  REQUIRE(back.certificate.has_value());
  CHECK(back.certificate->status == CertificateStatus::kFeasible);
  CHECK(back.certificate->notes == cert.notes);
  CHECK_FALSE(back.runtime_s.has_value());
  CHECK(text.find("runtime_s") == std::string::npos);
  CHECK(result_json(back) == text);
  CHECK_THROWS_AS(parse_result_json("{"), InputError);
}

TEST_CASE("generator spec text round trip") {
  auto spec = GenSpec::desk(6, 7);
  spec.conflicts = 3;
  spec.side_constraints = false;
  spec.merit_padding = {1.5, 2.5, 0.125};
  CHECK(parse_gen_spec(gen_spec_config(spec)) == spec);
  CHECK(parse_gen_spec("preset = desk 3 4\nconflicts = 0\n") == [] {
    auto s = GenSpec::desk(3, 4);
    s.conflicts = 0;
    return s;
  }());
  CHECK(parse_gen_spec("preset = enrollment 2024\n").sizes == enrollment_shapes(2024));
  CHECK_THROWS_AS(parse_gen_spec("preset = moon\n"), InputError);
  CHECK_THROWS_AS(parse_gen_spec("colour = blue\n"), InputError);
}

TEST_CASE("solver option files") {
  const auto o = parse_solve_options(
      "# tuned for the desk instances\n"
      "time_limit_s = 30\ngap_rel = 0.01\nworkers = 2\nseed = 5\nexternal_lb = 227\n"
      "warm_start = deal\nnode_limit = 1000\nroot_heuristic = false\npairs_bound = no\n"
      "ls_moves = 10\nls_evaluations = 20\n");
  CHECK(o.solver.time_limit_s == 30.0);
  CHECK(o.solver.gap_rel == 0.01);
  CHECK(o.solver.workers == 2);
  CHECK(o.solver.seed == 5);
  CHECK(o.solver.external_lb == 227.0);
  CHECK(o.warm_start == WarmStart::kDeal);
  CHECK(o.solver.node_limit == 1000);
  CHECK_FALSE(o.root_heuristic);
  CHECK_FALSE(o.pairs_bound);
  CHECK(o.ls_moves == 10);
  CHECK(o.ls_evaluations == 20);
  CHECK(parse_solve_options("time_limit_s = none\n").solver.time_limit_s == kInfinity);
  CHECK_THROWS_AS(parse_solve_options("warm_start = maybe\n"), InputError);
  CHECK_THROWS_AS(parse_solve_options("workers = many\n"), InputError);
}

TEST_CASE("key-value grammar") {
  const auto kv = parse_key_values("a = 1\n# comment\n\nb=two words # trailing\na = 3\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"a", "1"});
  CHECK(kv[1] == std::pair<std::string, std::string>{"b", "two words"});
  CHECK(kv[2].second == "3");
  CHECK_THROWS_AS(parse_key_values("no equals sign\n"), InputError);
}

TEST_CASE("shortest round-trip doubles") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(547.57) == "547.57");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
