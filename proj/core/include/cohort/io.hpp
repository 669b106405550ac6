#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohort/bounds.hpp"
#include "cohort/generator.hpp"
#include "cohort/milp.hpp"
#include "cohort/model_variant.hpp"
#include "cohort/pipeline.hpp"
#include "cohort/roster.hpp"

namespace cohort {

/// Library version string, e.g. "0.1.0".
std::string_view version();

/// `key = value` lines; `#` starts a comment. Keys may repeat.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
KeyValues parse_key_values(std::string_view text, std::string_view source = "<config>");

// ---- rosters ---------------------------------------------------------------

/// Student table: id,aom,mom,prt,gender,race,old_company,battalion,
/// task_force,prior_service,sapr,international,batt_locked,sports
std::string roster_csv(const Roster& roster);
/// Everything that is not per student: companies, classes, tolerances,
/// weights, company subsets and conflict pairs.
std::string roster_config(const Roster& roster);
Roster parse_roster(std::string_view csv, std::string_view config,
                    std::string_view source = "<roster>");

/// The config lives next to the CSV with the extension replaced by ".cfg".
std::filesystem::path companion_path(const std::filesystem::path& csv_path);
void write_roster(const Roster& roster, const std::filesystem::path& csv_path);
Roster read_roster(const std::filesystem::path& csv_path);

// ---- assignments and results ------------------------------------------------

/// id,old_company,new_company in roster order.
std::string assignment_csv(const Roster& roster, const Assignment& asg);
Assignment parse_assignment(const Roster& roster, std::string_view csv,
                            std::string_view source = "<assignment>");
void write_assignment(const Roster& roster, const Assignment& asg, const std::filesystem::path& path);
Assignment read_assignment(const Roster& roster, const std::filesystem::path& path);

/// Metadata stored beside an assignment file.
struct ResultRecord {
  std::string tool_version;
  std::string roster_path;
  ModelVariant variant;
  std::uint64_t seed = 0;
  RosterSolveOptions options;
  SolveStatus status = SolveStatus::kTimeLimitNoSolution;
  double objective = 0.0;
  double best_bound = 0.0;
  double gap = 0.0;
  long nodes = 0;
  long lp_iterations = 0;
  std::optional<double> root_lp_bound;
  std::optional<double> runtime_s;
  std::optional<Certificate> certificate;
};

std::string result_json(const ResultRecord& record);
ResultRecord parse_result_json(std::string_view text, std::string_view source = "<result>");
/// The sidecar lives next to the assignment CSV with the extension ".json".
std::filesystem::path sidecar_path(const std::filesystem::path& assignment_path);

// ---- option files -----------------------------------------------------------

/// Applies generator keys on top of `base`. A `preset` key (academy, desk,
/// enrollment) replaces the base first.
GenSpec parse_gen_spec(std::string_view text, GenSpec base = GenSpec::academy(),
                       std::string_view source = "<spec>");
std::string gen_spec_config(const GenSpec& spec);

/// Applies solver keys: time_limit_s, gap_abs, gap_rel, workers, seed,
/// external_lb, warm_start, node_limit, root_heuristic, pairs_bound,
/// ls_moves, ls_evaluations.
RosterSolveOptions parse_solve_options(std::string_view text, RosterSolveOptions base = {},
                                       std::string_view source = "<options>");

// ---- helpers ----------------------------------------------------------------

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
/// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace cohort
