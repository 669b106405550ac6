#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cohort/bounds.hpp"
#include "cohort/compiler.hpp"
#include "cohort/error.hpp"
#include "cohort/feasibility.hpp"
#include "cohort/generator.hpp"
#include "cohort/io.hpp"
#include "cohort/lp_format.hpp"
#include "cohort/objectives.hpp"
#include "cohort/pipeline.hpp"
#include "cohort/reporting.hpp"

namespace cohort::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kThreadsEnv = "COHORT_SHUFFLE_THREADS";
constexpr double kDefaultTimeLimit = 300.0;

std::string percent(double fraction) {
  if (!std::isfinite(fraction)) return "inf";
  if (fraction == 0.0) return "0%";
  return fmt::format("{:.2f}%", 100.0 * fraction);
}

std::string number(double v) {
  if (std::isnan(v)) return "none";
  if (!std::isfinite(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

ModelKind require_kind(const std::string& text) {
  const auto kind = parse_model_kind(text);
  if (!kind) throw CLI::ValidationError("--variant", "expected min, dev or pairs, got '" + text + "'");
  return *kind;
}

ReportFormat require_format(const std::string& text) {
  const auto format = parse_report_format(text);
  if (!format) throw CLI::ValidationError("--format", "expected text, csv or markdown, got '" + text + "'");
  return *format;
}

int workers_from_env() {
  const char* value = std::getenv(std::string(kThreadsEnv).c_str());
  if (value == nullptr || *value == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(value, &end, 10);
  if (*end != '\0' || n < 1) {
    throw InputError(fmt::format("{} must be a positive integer, got '{}'", kThreadsEnv, value));
  }
  return static_cast<int>(n);
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kProvenOptimal: return kExitOk;
    case SolveStatus::kInfeasible: return kExitInfeasible;
    case SolveStatus::kFeasibleGap:
    case SolveStatus::kTimeLimitNoSolution: return kExitTimeLimit;
    case SolveStatus::kNumericFailure: return kExitFailure;
  }
  return kExitFailure;
}

void print_objectives(std::ostream& out, const Roster& roster, const Assignment& asg) {
  out << "same-company count: " << count_same_company(roster, asg) << '\n';
  out << "same-old-company pairs: " << count_pairs(roster, asg) << '\n';
  out << "weighted deviation: " << number(weighted_deviation(roster, asg)) << '\n';
}

void print_certificate(std::ostream& out, const Certificate& c) {
  out << "certificate: " << to_string(c.status) << '\n';
  out << "  reported objective: " << number(c.reported_objective) << '\n';
  out << "  recomputed objective: " << number(c.recomputed_objective) << '\n';
  out << "  lower bound: " << number(c.lower_bound) << '\n';
  out << "  gap: " << percent(c.gap) << '\n';
  out << "  feasible: " << (c.feasible ? "yes" : "no") << '\n';
  if (c.violations > 0) out << "  violations: " << c.violations << '\n';
  for (const auto& note : c.notes) out << "  note: " << note << '\n';
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::string out;
  std::string preset = "academy";
  int companies = 8;
  int size = 8;
  int class_year = 2023;
  std::string spec_file;
  std::uint64_t seed = 1;
  bool no_side_constraints = false;
};

int run_generate(const GenerateArgs& a, std::ostream& out) {
  GenSpec spec;
  if (a.preset == "academy") {
    spec = GenSpec::academy();
  } else if (a.preset == "desk") {
    spec = GenSpec::desk(a.companies, a.size);
  } else if (a.preset == "enrollment") {
    spec = GenSpec::enrollment(a.class_year);
  } else {
    throw CLI::ValidationError("--preset", "expected academy, desk or enrollment, got '" + a.preset + "'");
  }
  if (!a.spec_file.empty()) spec = parse_gen_spec(read_file(a.spec_file), spec, a.spec_file);
  if (a.no_side_constraints) spec.side_constraints = false;

  const Roster roster = generate(spec, a.seed);
  write_roster(roster, a.out);
  out << fmt::format("wrote {} students in {} companies to {} (config {})\n", roster.num_students(),
                     roster.num_companies(), a.out, companion_path(a.out).string());
  return kExitOk;
}

// ---- validate ---------------------------------------------------------------

struct ValidateArgs {
  std::string roster;
  std::string assignment;
  std::string variant = "min";
};

int run_validate(const ValidateArgs& a, std::ostream& out) {
  const Roster roster = read_roster(a.roster);
  const auto problems = validate_roster(roster);
  for (const auto& v : problems) out << "roster: " << to_string(v.kind) << ": " << v.subject << '\n';
  if (!problems.empty()) {
    out << problems.size() << " roster defect(s)\n";
    return kExitInfeasible;
  }
  out << fmt::format("roster ok: {} students, {} companies, {} battalions\n", roster.num_students(),
                     roster.num_companies(), roster.battalions.size());
  if (a.assignment.empty()) return kExitOk;

  const ModelVariant variant = ModelVariant::for_roster(require_kind(a.variant), roster);
  const Assignment asg = read_assignment(roster, a.assignment);
  const auto report = check_feasible(roster, asg, {variant.no_stay(), kFeasibilityTolerance});
  for (const auto& v : report.violations) {
    out << fmt::format("violation: {} company={} student={} index={} excess={}\n", family_tag(v.family), v.company,
                       v.student, v.index, format_double(v.excess));
  }
  if (!report.feasible()) {
    out << report.violations.size() << " violation(s)\n";
    return kExitInfeasible;
  }
  out << "assignment feasible\n";
  return kExitOk;
}

// ---- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string roster;
  std::string variant;
  std::string out;
  std::string options_file;
  std::optional<double> time_limit;
  std::optional<double> gap_abs;
  std::optional<double> gap_rel;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<double> external_lb;
  std::optional<std::string> warm_start;
  std::optional<long> node_limit;
  bool no_root_heuristic = false;
  bool no_pairs_bound = false;
  bool record_timing = false;
  std::string format = "text";
};

fs::path default_result_path(const fs::path& roster, ModelKind kind) {
  auto p = roster;
  p.replace_filename(roster.stem().string() + "." + std::string(to_string(kind)) + ".csv");
  return p;
}

int run_solve(const SolveArgs& a, std::ostream& out) {
  const ModelKind kind = require_kind(a.variant);
  const ReportFormat format = require_format(a.format);
  const Roster roster = read_roster(a.roster);
  const ModelVariant variant = ModelVariant::for_roster(kind, roster);

  RosterSolveOptions options;
  options.solver.time_limit_s = kDefaultTimeLimit;
  options.solver.workers = workers_from_env();
  if (!a.options_file.empty()) options = parse_solve_options(read_file(a.options_file), options, a.options_file);
  if (a.time_limit) options.solver.time_limit_s = *a.time_limit;
  if (a.gap_abs) options.solver.gap_abs = *a.gap_abs;
  if (a.gap_rel) options.solver.gap_rel = *a.gap_rel;
  if (a.workers) options.solver.workers = *a.workers;
  if (a.seed) options.solver.seed = *a.seed;
  if (a.external_lb) options.solver.external_lb = *a.external_lb;
  if (a.node_limit) options.solver.node_limit = *a.node_limit;
  if (a.warm_start) {
    const auto ws = parse_warm_start(*a.warm_start);
    if (!ws) throw CLI::ValidationError("--warm-start", "expected none, deal or deal+ls");
    options.warm_start = *ws;
  }
  if (a.no_root_heuristic) options.root_heuristic = false;
  if (a.no_pairs_bound) options.pairs_bound = false;
  if (options.solver.workers < 1) throw CLI::ValidationError("--workers", "must be at least 1");

  const auto started = std::chrono::steady_clock::now();
  const SolveResult result = solve_roster(roster, variant, options);
  const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  out << "variant: " << to_string(kind) << '\n';
  out << "status: " << to_string(result.status) << '\n';
  out << "objective: " << number(result.objective) << '\n';
  out << "best bound: " << number(result.best_bound) << '\n';
  out << "gap: " << percent(result.gap) << '\n';
  out << fmt::format("nodes: {}\nlp iterations: {}\n", result.stats.nodes, result.stats.lp_iterations);
  if (a.record_timing) out << fmt::format("runtime: {:.3f} s\n", runtime);

  std::optional<Certificate> certificate;
  if (result.assignment) {
    certificate = certify(result, roster, variant);
    const fs::path path = a.out.empty() ? default_result_path(a.roster, kind) : fs::path(a.out);
    ResultRecord rec;
    rec.tool_version = std::string(version());
    rec.roster_path = a.roster;
    rec.variant = variant;
    rec.seed = options.solver.seed;
    rec.options = options;
    rec.status = result.status;
    rec.objective = result.objective;
    rec.best_bound = result.best_bound;
    rec.gap = result.gap;
    rec.nodes = result.stats.nodes;
    rec.lp_iterations = result.stats.lp_iterations;
    rec.root_lp_bound = result.stats.root_lp_bound;
    if (a.record_timing) rec.runtime_s = runtime;
    rec.certificate = certificate;
    write_assignment(roster, *result.assignment, path);
    write_file(sidecar_path(path), result_json(rec));

    print_objectives(out, roster, *result.assignment);
    print_certificate(out, *certificate);
    out << "wrote " << path.string() << " and " << sidecar_path(path).string() << '\n';
    out << '\n' << render(company_stats(roster, *result.assignment), format);
  }

  if (certificate && !certificate->ok()) return kExitFailure;
  return exit_code(result.status);
}

// ---- certify ----------------------------------------------------------------

struct CertifyArgs {
  std::string result;
  std::string roster;
};

int run_certify(const CertifyArgs& a, std::ostream& out) {
  const fs::path sidecar = sidecar_path(a.result);
  const ResultRecord rec = parse_result_json(read_file(sidecar), sidecar.string());
  const std::string roster_path = a.roster.empty() ? rec.roster_path : a.roster;
  const Roster roster = read_roster(roster_path);
  const Assignment asg = read_assignment(roster, a.result);
  const Certificate cert =
      certify(asg, rec.objective, rec.status == SolveStatus::kProvenOptimal, roster, rec.variant);
  out << "variant: " << to_string(rec.variant.kind) << '\n';
  out << "solver status: " << to_string(rec.status) << '\n';
  print_certificate(out, cert);
  return cert.ok() ? kExitOk : kExitFailure;
}

// ---- export-lp ----------------------------------------------------------------

struct ExportArgs {
  std::string roster;
  std::string variant;
  std::string out;
};

int run_export(const ExportArgs& a, std::ostream& out) {
  const Roster roster = read_roster(a.roster);
  const CompiledModel model = compile(roster, ModelVariant::for_roster(require_kind(a.variant), roster));
  export_lp(model.ip, a.out);
  out << fmt::format("wrote {} columns, {} rows to {}\n", model.ip.num_cols(), model.ip.num_rows(), a.out);
  return kExitOk;
}

// ---- report -------------------------------------------------------------------

struct ReportArgs {
  std::string roster;
  std::string assignment;
  std::string format = "text";
  std::string out;
  bool per_company = false;
  bool compare = false;
};

int run_report(const ReportArgs& a, std::ostream& out) {
  const ReportFormat format = require_format(a.format);
  const Roster roster = read_roster(a.roster);
  const Assignment old = Assignment::identity(roster);
  const Assignment asg = a.assignment.empty() ? old : read_assignment(roster, a.assignment);

  std::string text;
  if (a.compare && !a.assignment.empty()) {
    text += "old assignment\n" + render(company_stats(roster, old), format, a.per_company);
    text += "\nnew assignment\n";
  }
  text += render(company_stats(roster, asg), format, a.per_company);
  if (a.out.empty()) {
    out << text;
    if (format == ReportFormat::kText) print_objectives(out, roster, asg);
  } else {
    write_file(a.out, text);
    out << "wrote " << a.out << '\n';
  }
  return kExitOk;
}

// ---- bound --------------------------------------------------------------------

struct BoundArgs {
  std::string roster;
  std::optional<int> class_year;
  std::vector<int> sizes;
  std::optional<int> companies;
};

int run_bound(const BoundArgs& a, std::ostream& out) {
  const int sources = (a.roster.empty() ? 0 : 1) + (a.class_year ? 1 : 0) + (a.sizes.empty() ? 0 : 1);
  if (sources != 1) throw CLI::ValidationError("bound", "give exactly one of --roster, --class-year, --sizes");

  PairsBoundReport report;
  std::vector<std::string> labels;
  if (!a.roster.empty()) {
    const Roster roster = read_roster(a.roster);
    report = pairs_lower_bound(roster);
    for (const auto& c : roster.companies) labels.push_back(c.label);
  } else {
    const std::vector<int> sizes = a.class_year ? enrollment_shapes(*a.class_year) : a.sizes;
    report = pairs_lower_bound(sizes, a.companies.value_or(static_cast<int>(sizes.size())));
  }
  out << "company  size  pairs\n";
  for (std::size_t c = 0; c < report.companies.size(); ++c) {
    const auto& row = report.companies[c];
    const std::string label = c < labels.size() ? labels[c] : std::to_string(c + 1);
    out << fmt::format("{:<7}  {:>4}  {:>5}\n", label, row.size, row.bound);
  }
  out << "total: " << report.total << '\n';
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reassigns students to companies under balance constraints."};
  app.name("cohort-shuffle");
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate a synthetic roster and its config");
  generate_cmd->add_option("-o,--out", gen.out, "Roster CSV to write; the config goes next to it")->required();
  generate_cmd->add_option("--preset", gen.preset, "academy, desk or enrollment")->capture_default_str();
  generate_cmd->add_option("--companies", gen.companies, "Companies for the desk preset")->capture_default_str();
  generate_cmd->add_option("--size", gen.size, "Company size for the desk preset")->capture_default_str();
  generate_cmd->add_option("--class-year", gen.class_year, "Class year for the enrollment preset")->capture_default_str();
  generate_cmd->add_option("--spec", gen.spec_file, "Generator config applied on top of the preset");
  generate_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate_cmd->add_flag("--no-side-constraints", gen.no_side_constraints,
                         "Open tolerances, no conflicts, locks, SAPR or international requirements");

  ValidateArgs val;
  auto* validate_cmd = app.add_subcommand("validate", "Check a roster, and optionally an assignment");
  validate_cmd->add_option("-r,--roster", val.roster, "Roster CSV")->required();
  validate_cmd->add_option("-a,--assignment", val.assignment, "Assignment CSV to check for feasibility");
  validate_cmd->add_option("--variant", val.variant, "min, dev or pairs (decides the no-stay rule)")
      ->capture_default_str();

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a roster and write the assignment");
  solve_cmd->add_option("-r,--roster", sol.roster, "Roster CSV")->required();
  solve_cmd->add_option("--variant", sol.variant, "min, dev or pairs")->required();
  solve_cmd->add_option("-o,--out", sol.out, "Assignment CSV (default: <roster>.<variant>.csv)");
  solve_cmd->add_option("--options", sol.options_file, "Solver config file");
  solve_cmd->add_option("--time-limit", sol.time_limit, "Seconds (default 300)");
  solve_cmd->add_option("--gap-abs", sol.gap_abs, "Absolute gap tolerance");
  solve_cmd->add_option("--gap-rel", sol.gap_rel, "Relative gap tolerance");
  solve_cmd->add_option("--workers", sol.workers, "Search threads (default: $COHORT_SHUFFLE_THREADS or 1)");
  solve_cmd->add_option("--seed", sol.seed, "Heuristic seed");
  solve_cmd->add_option("--external-lb", sol.external_lb, "Known lower bound on the objective");
  solve_cmd->add_option("--warm-start", sol.warm_start, "none, deal or deal+ls");
  solve_cmd->add_option("--node-limit", sol.node_limit, "Stop after this many nodes");
  solve_cmd->add_flag("--no-root-heuristic", sol.no_root_heuristic, "Skip LP rounding and repair");
  solve_cmd->add_flag("--no-pairs-bound", sol.no_pairs_bound, "Do not seed PAIRS with the pairs bound");
  solve_cmd->add_flag("--record-timing", sol.record_timing, "Store the runtime in the result file");
  solve_cmd->add_option("--format", sol.format, "Report format: text, csv or markdown")->capture_default_str();

  CertifyArgs cer;
  auto* certify_cmd = app.add_subcommand("certify", "Recheck a result file");
  certify_cmd->add_option("result", cer.result, "Assignment CSV written by solve")->required();
  certify_cmd->add_option("-r,--roster", cer.roster, "Roster CSV (default: the one named in the result)");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export-lp", "Write the integer program in LP format");
  export_cmd->add_option("-r,--roster", exp.roster, "Roster CSV")->required();
  export_cmd->add_option("--variant", exp.variant, "min, dev or pairs")->required();
  export_cmd->add_option("-o,--out", exp.out, "LP file")->required();

  ReportArgs rep;
  auto* report_cmd = app.add_subcommand("report", "Company statistics for an assignment");
  report_cmd->add_option("-r,--roster", rep.roster, "Roster CSV")->required();
  report_cmd->add_option("-a,--assignment", rep.assignment, "Assignment CSV (default: the old assignment)");
  report_cmd->add_option("--format", rep.format, "text, csv or markdown")->capture_default_str();
  report_cmd->add_option("-o,--out", rep.out, "Write the table here instead of stdout");
  report_cmd->add_flag("--per-company", rep.per_company, "List every company before the summary");
  report_cmd->add_flag("--compare", rep.compare, "Show the old assignment first");

  BoundArgs bnd;
  auto* bound_cmd = app.add_subcommand("bound", "Lower bound on same-old-company pairs");
  bound_cmd->add_option("-r,--roster", bnd.roster, "Roster CSV");
  bound_cmd->add_option("--class-year", bnd.class_year, "Built-in enrollment shapes: 2023 or 2024");
  bound_cmd->add_option("--sizes", bnd.sizes, "Old company sizes")->delimiter(',');
  bound_cmd->add_option("--companies", bnd.companies, "Number of new companies (default: one per size)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate_cmd) return run_generate(gen, out);
    if (*validate_cmd) return run_validate(val, out);
    if (*solve_cmd) return run_solve(sol, out);
    if (*certify_cmd) return run_certify(cer, out);
    if (*export_cmd) return run_export(exp, out);
    if (*report_cmd) return run_report(rep, out);
    if (*bound_cmd) return run_bound(bnd, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StructuralInfeasibility& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace cohort::cli
