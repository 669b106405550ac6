#include "cohort/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "cohort/error.hpp"

#ifndef COHORT_VERSION
#define COHORT_VERSION "0.0.0"
#endif

namespace cohort {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string_view version() { return COHORT_VERSION; }

namespace {

constexpr std::string_view kRosterHeader =
    "id,aom,mom,prt,gender,race,old_company,battalion,task_force,prior_service,sapr,international,"
    "batt_locked,sports";
constexpr std::string_view kAssignmentHeader = "id,old_company,new_company";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// Non-empty lines with their 1-based line numbers.
std::vector<std::pair<int, std::string_view>> lines_of(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int number = 0;
  for (auto line : split(text, '\n')) {
    ++number;
    line = trim(line);
    if (!line.empty()) out.emplace_back(number, line);
  }
  return out;
}

[[noreturn]] void fail(std::string_view source, int line, std::string_view message) {
  if (line > 0) throw InputError(fmt::format("{}:{}: {}", source, line, message));
  throw InputError(fmt::format("{}: {}", source, message));
}

double to_double(std::string_view s, std::string_view source, int line) {
  s = trim(s);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) fail(source, line, fmt::format("expected a number, got '{}'", s));
  return v;
}

long long to_int(std::string_view s, std::string_view source, int line) {
  s = trim(s);
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) fail(source, line, fmt::format("expected an integer, got '{}'", s));
  return v;
}

bool to_bool(std::string_view s, std::string_view source, int line) {
  s = trim(s);
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no") return false;
  fail(source, line, fmt::format("expected 0/1, got '{}'", s));
}

template <class T>
int index_of(const std::vector<T>& items, std::string_view name) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::string join(const std::vector<std::string>& items, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

Range to_range(const std::string& value, std::string_view source, int line) {
  const auto w = words(value);
  if (w.size() != 2) fail(source, line, "expected 'min max'");
  return {to_double(w[0], source, line), to_double(w[1], source, line)};
}

}  // namespace

std::string format_double(double v) { return fmt::format("{}", v); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(fmt::format("cannot write {}", path.string()));
  out << contents;
  if (!out) throw InputError(fmt::format("failed writing {}", path.string()));
}

KeyValues parse_key_values(std::string_view text, std::string_view source) {
  KeyValues out;
  for (auto [number, line] : lines_of(text)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(source, number, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) fail(source, number, "empty key");
    out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

// ---- rosters ---------------------------------------------------------------

std::string roster_csv(const Roster& roster) {
  std::string out(kRosterHeader);
  out += '\n';
  for (const auto& s : roster.students) {
    const auto& company = roster.companies[static_cast<std::size_t>(s.old_company.value)];
    std::vector<std::string> sports;
    for (int v : s.sports) sports.push_back(roster.sports[static_cast<std::size_t>(v)]);
    out += fmt::format("{},{},{},{},{},{},{},{},{:d},{:d},{:d},{:d},{:d},{}\n", s.id,
                       format_double(s.aom()), format_double(s.mom()), format_double(s.prt()),
                       s.gender == Gender::kMale ? "M" : "F",
                       roster.race_classes[static_cast<std::size_t>(s.race)], company.label,
                       roster.battalions[static_cast<std::size_t>(company.battalion)], s.task_force,
                       s.prior_service, s.sapr_guide, s.international, s.battalion_locked,
                       join(sports, ";"));
  }
  return out;
}

std::string roster_config(const Roster& roster) {
  const auto& t = roster.tolerances;
  std::string out = "# roster configuration\n";
  out += fmt::format("battalions = {}\n", join(roster.battalions));
  std::vector<std::string> companies;
  for (const auto& c : roster.companies) {
    companies.push_back(c.label + ":" + roster.battalions[static_cast<std::size_t>(c.battalion)]);
  }
  out += fmt::format("companies = {}\n", join(companies));
  out += fmt::format("race_classes = {}\n", join(roster.race_classes));
  out += fmt::format("sports = {}\n", join(roster.sports));
  for (int q = 0; q < kNumQualities; ++q) {
    const auto& r = t.count[static_cast<std::size_t>(q)];
    out += fmt::format("count.{} = {} {}\n", to_string(static_cast<Quality>(q)), r.min, r.max);
  }
  for (int m = 0; m < kNumMerits; ++m) {
    const auto& r = t.avg_score[static_cast<std::size_t>(m)];
    out += fmt::format("avg.{} = {} {}\n", to_string(static_cast<Merit>(m)), format_double(r.min),
                       format_double(r.max));
  }
  for (int g = 0; g < kNumGenders; ++g) {
    const auto& r = t.gender_fraction[static_cast<std::size_t>(g)];
    out += fmt::format("gender.{} = {} {}\n", to_string(static_cast<Gender>(g)), format_double(r.min),
                       format_double(r.max));
  }
  for (std::size_t e = 0; e < t.race_fraction.size() && e < roster.race_classes.size(); ++e) {
    out += fmt::format("race.{} = {} {}\n", roster.race_classes[e], format_double(t.race_fraction[e].min),
                       format_double(t.race_fraction[e].max));
  }
  for (std::size_t v = 0; v < t.max_athletes.size() && v < roster.sports.size(); ++v) {
    out += fmt::format("max_athletes.{} = {}\n", roster.sports[v], t.max_athletes[v]);
  }
  out += fmt::format("min_sapr = {}\n", t.min_sapr);
  out += fmt::format("num_intl = {}\n", t.num_intl);
  auto subset = [&](const std::optional<std::vector<int>>& list) -> std::string {
    if (!list) return "all";
    if (list->empty()) return "none";
    std::vector<std::string> labels;
    for (int c : *list) labels.push_back(roster.companies[static_cast<std::size_t>(c)].label);
    return join(labels);
  };
  out += fmt::format("sapr_companies = {}\n", subset(roster.sapr_companies));
  out += fmt::format("intl_companies = {}\n", subset(roster.intl_companies));
  out += fmt::format("weights = {} {}\n", format_double(roster.weights.aom), format_double(roster.weights.mom));
  out += fmt::format("deviation = {}\n", roster.deviation_mode == DeviationMode::kCentered ? "centered" : "sum");
  for (auto [r, s] : roster.conflict_pairs) {
    out += fmt::format("conflict = {} {}\n", roster.students[static_cast<std::size_t>(r)].id,
                       roster.students[static_cast<std::size_t>(s)].id);
  }
  return out;
}

Roster parse_roster(std::string_view csv, std::string_view config, std::string_view source) {
  const std::string cfg_source = std::string(source) + " (config)";
  const auto kv = parse_key_values(config, cfg_source);
  Roster roster;

  // Structural keys first; tolerances refer to the names they define.
  std::vector<std::string> company_specs;
  for (const auto& [key, value] : kv) {
    if (key == "battalions") {
      roster.battalions = words(value);
    } else if (key == "companies") {
      company_specs = words(value);
    } else if (key == "race_classes") {
      roster.race_classes = words(value);
    } else if (key == "sports") {
      roster.sports = words(value);
    }
  }
  for (const auto& spec : company_specs) {
    const auto colon = spec.find(':');
    Company c;
    c.label = spec.substr(0, colon);
    if (colon == std::string::npos) {
      if (roster.battalions.empty()) roster.battalions.push_back("B1");
      c.battalion = 0;
    } else {
      c.battalion = index_of(roster.battalions, spec.substr(colon + 1));
      if (c.battalion < 0) fail(cfg_source, 0, fmt::format("company {} names unknown battalion", c.label));
    }
    roster.companies.push_back(std::move(c));
  }
  if (roster.companies.empty()) fail(cfg_source, 0, "no companies defined");

  // Students.
  const auto rows = lines_of(csv);
  if (rows.empty() || rows.front().second != kRosterHeader) {
    fail(source, rows.empty() ? 0 : rows.front().first, fmt::format("header must be '{}'", kRosterHeader));
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto [number, line] = rows[r];
    const auto f = split(line, ',');
    if (f.size() != 14) fail(source, number, fmt::format("expected 14 fields, found {}", f.size()));
    Student s;
    s.id = std::string(trim(f[0]));
    s.scores = {to_double(f[1], source, number), to_double(f[2], source, number),
                to_double(f[3], source, number)};
    const auto g = trim(f[4]);
    if (g == "M") {
      s.gender = Gender::kMale;
    } else if (g == "F") {
      s.gender = Gender::kFemale;
    } else {
      fail(source, number, fmt::format("gender must be M or F, got '{}'", g));
    }
    s.race = index_of(roster.race_classes, trim(f[5]));
    if (s.race < 0) fail(source, number, fmt::format("unknown race class '{}'", trim(f[5])));
    const auto company = roster.find_company(trim(f[6]));
    if (!company) fail(source, number, fmt::format("unknown company '{}'", trim(f[6])));
    s.old_company = CompanyId{*company};
    const auto& batt = roster.battalions[static_cast<std::size_t>(roster.companies[static_cast<std::size_t>(*company)].battalion)];
    if (trim(f[7]) != batt) {
      fail(source, number, fmt::format("company {} belongs to battalion {}, not {}", trim(f[6]), batt, trim(f[7])));
    }
    s.task_force = to_bool(f[8], source, number);
    s.prior_service = to_bool(f[9], source, number);
    s.sapr_guide = to_bool(f[10], source, number);
    s.international = to_bool(f[11], source, number);
    s.battalion_locked = to_bool(f[12], source, number);
    const auto sports = trim(f[13]);
    if (!sports.empty()) {
      for (auto name : split(sports, ';')) {
        const int v = index_of(roster.sports, trim(name));
        if (v < 0) fail(source, number, fmt::format("unknown sport '{}'", trim(name)));
        s.sports.push_back(v);
      }
      std::sort(s.sports.begin(), s.sports.end());
      s.sports.erase(std::unique(s.sports.begin(), s.sports.end()), s.sports.end());
    }
    roster.students.push_back(std::move(s));
  }

  // Defaults that never bind, then the configured tolerances.
  auto& t = roster.tolerances;
  const int n = roster.num_students();
  t.count.fill(CountRange{0, n});
  for (int m = 0; m < kNumMerits; ++m) {
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t a = 0; a < roster.students.size(); ++a) {
      const double v = roster.students[a].scores[static_cast<std::size_t>(m)];
      lo = a == 0 ? v : std::min(lo, v);
      hi = a == 0 ? v : std::max(hi, v);
    }
    t.avg_score[static_cast<std::size_t>(m)] = {std::floor(lo), std::ceil(hi)};
  }
  t.gender_fraction.fill(Range{0.0, 1.0});
  t.race_fraction.assign(roster.race_classes.size(), Range{0.0, 1.0});
  t.max_athletes.assign(roster.sports.size(), n);
  t.min_sapr = 0;
  t.num_intl = 1;

  auto parse_subset = [&](const std::string& value) -> std::optional<std::vector<int>> {
    if (value == "all") return std::nullopt;
    std::vector<int> out;
    if (value == "none") return out;
    for (const auto& label : words(value)) {
      const auto c = roster.find_company(label);
      if (!c) fail(cfg_source, 0, fmt::format("unknown company '{}' in subset", label));
      out.push_back(*c);
    }
    return out;
  };

  for (const auto& [key, value] : kv) {
    const auto dot = key.find('.');
    const std::string head = key.substr(0, dot);
    const std::string tail = dot == std::string::npos ? "" : key.substr(dot + 1);
    if (key == "battalions" || key == "companies" || key == "race_classes" || key == "sports") continue;
    if (head == "count" && !tail.empty()) {
      int q = -1;
      for (int k = 0; k < kNumQualities; ++k) {
        if (tail == to_string(static_cast<Quality>(k))) q = k;
      }
      if (q < 0) fail(cfg_source, 0, fmt::format("unknown count group '{}'", tail));
      const auto r = to_range(value, cfg_source, 0);
      t.count[static_cast<std::size_t>(q)] = {static_cast<int>(std::lround(r.min)), static_cast<int>(std::lround(r.max))};
    } else if (head == "avg" && !tail.empty()) {
      int m = -1;
      for (int k = 0; k < kNumMerits; ++k) {
        if (tail == to_string(static_cast<Merit>(k))) m = k;
      }
      if (m < 0) fail(cfg_source, 0, fmt::format("unknown merit '{}'", tail));
      t.avg_score[static_cast<std::size_t>(m)] = to_range(value, cfg_source, 0);
    } else if (head == "gender" && !tail.empty()) {
      int g = -1;
      for (int k = 0; k < kNumGenders; ++k) {
        if (tail == to_string(static_cast<Gender>(k))) g = k;
      }
      if (g < 0) fail(cfg_source, 0, fmt::format("unknown gender '{}'", tail));
      t.gender_fraction[static_cast<std::size_t>(g)] = to_range(value, cfg_source, 0);
    } else if (head == "race" && !tail.empty()) {
      const int e = index_of(roster.race_classes, tail);
      if (e < 0) fail(cfg_source, 0, fmt::format("unknown race class '{}'", tail));
      t.race_fraction[static_cast<std::size_t>(e)] = to_range(value, cfg_source, 0);
    } else if (head == "max_athletes" && !tail.empty()) {
      const int v = index_of(roster.sports, tail);
      if (v < 0) fail(cfg_source, 0, fmt::format("unknown sport '{}'", tail));
      t.max_athletes[static_cast<std::size_t>(v)] = static_cast<int>(to_int(value, cfg_source, 0));
    } else if (key == "min_sapr") {
      t.min_sapr = static_cast<int>(to_int(value, cfg_source, 0));
    } else if (key == "num_intl") {
      t.num_intl = static_cast<int>(to_int(value, cfg_source, 0));
    } else if (key == "sapr_companies") {
      roster.sapr_companies = parse_subset(value);
    } else if (key == "intl_companies") {
      roster.intl_companies = parse_subset(value);
    } else if (key == "weights") {
      const auto w = words(value);
      if (w.size() != 2) fail(cfg_source, 0, "weights needs two numbers");
      roster.weights = {to_double(w[0], cfg_source, 0), to_double(w[1], cfg_source, 0)};
    } else if (key == "deviation") {
      if (value == "sum") {
        roster.deviation_mode = DeviationMode::kScoreSum;
      } else if (value == "centered") {
        roster.deviation_mode = DeviationMode::kCentered;
      } else {
        fail(cfg_source, 0, "deviation must be 'sum' or 'centered'");
      }
    } else if (key == "conflict") {
      const auto w = words(value);
      if (w.size() != 2) fail(cfg_source, 0, "conflict needs two student ids");
      const auto r = roster.find_student(w[0]);
      const auto s = roster.find_student(w[1]);
      if (!r || !s) fail(cfg_source, 0, fmt::format("conflict names unknown student in '{}'", value));
      roster.conflict_pairs.emplace_back(*r, *s);
    } else {
      fail(cfg_source, 0, fmt::format("unknown key '{}'", key));
    }
  }
  return roster;
}

fs::path companion_path(const fs::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".cfg");
  return p;
}

void write_roster(const Roster& roster, const fs::path& csv_path) {
  write_file(csv_path, roster_csv(roster));
  write_file(companion_path(csv_path), roster_config(roster));
}

Roster read_roster(const fs::path& csv_path) {
  const auto cfg = companion_path(csv_path);
  return parse_roster(read_file(csv_path), read_file(cfg), csv_path.string());
}

// ---- assignments -------------------------------------------------------------

std::string assignment_csv(const Roster& roster, const Assignment& asg) {
  require_total(roster, asg);
  std::string out(kAssignmentHeader);
  out += '\n';
  for (std::size_t a = 0; a < roster.students.size(); ++a) {
    const auto& s = roster.students[a];
    out += fmt::format("{},{},{}\n", s.id, roster.companies[static_cast<std::size_t>(s.old_company.value)].label,
                       roster.companies[static_cast<std::size_t>(asg[a].value)].label);
  }
  return out;
}

Assignment parse_assignment(const Roster& roster, std::string_view csv, std::string_view source) {
  const auto rows = lines_of(csv);
  if (rows.empty() || rows.front().second != kAssignmentHeader) {
    fail(source, rows.empty() ? 0 : rows.front().first, fmt::format("header must be '{}'", kAssignmentHeader));
  }
  std::vector<int> target(roster.students.size(), -1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto [number, line] = rows[r];
    const auto f = split(line, ',');
    if (f.size() != 3) fail(source, number, "expected id,old_company,new_company");
    const auto a = roster.find_student(trim(f[0]));
    if (!a) fail(source, number, fmt::format("unknown student '{}'", trim(f[0])));
    const auto old = roster.find_company(trim(f[1]));
    if (!old || *old != roster.students[static_cast<std::size_t>(*a)].old_company.value) {
      fail(source, number, fmt::format("old company of {} does not match the roster", trim(f[0])));
    }
    const auto c = roster.find_company(trim(f[2]));
    if (!c) fail(source, number, fmt::format("unknown company '{}'", trim(f[2])));
    if (target[static_cast<std::size_t>(*a)] >= 0) fail(source, number, fmt::format("student {} listed twice", trim(f[0])));
    target[static_cast<std::size_t>(*a)] = *c;
  }
  std::vector<CompanyId> ids;
  ids.reserve(target.size());
  for (std::size_t a = 0; a < target.size(); ++a) {
    if (target[a] < 0) fail(source, 0, fmt::format("student {} missing", roster.students[a].id));
    ids.push_back(CompanyId{target[a]});
  }
  return Assignment(std::move(ids));
}

void write_assignment(const Roster& roster, const Assignment& asg, const fs::path& path) {
  write_file(path, assignment_csv(roster, asg));
}

Assignment read_assignment(const Roster& roster, const fs::path& path) {
  return parse_assignment(roster, read_file(path), path.string());
}

// ---- result sidecar ------------------------------------------------------------

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_or(const Json& j, double fallback) { return j.is_number() ? j.get<double>() : fallback; }

}  // namespace

fs::path sidecar_path(const fs::path& assignment_path) {
  auto p = assignment_path;
  p.replace_extension(".json");
  return p;
}

std::string result_json(const ResultRecord& rec) {
  Json j;
  j["tool"] = "cohort-shuffle";
  j["version"] = rec.tool_version;
  j["roster"] = rec.roster_path;
  j["variant"] = {{"kind", std::string(to_string(rec.variant.kind))},
                  {"weights", {{"aom", rec.variant.weights.aom}, {"mom", rec.variant.weights.mom}}},
                  {"deviation", rec.variant.deviation == DeviationMode::kCentered ? "centered" : "sum"}};
  j["seed"] = rec.seed;
  const auto& o = rec.options;
  j["options"] = {{"time_limit_s", number_or_null(o.solver.time_limit_s)},
                  {"gap_abs", o.solver.gap_abs},
                  {"gap_rel", o.solver.gap_rel},
                  {"workers", o.solver.workers},
                  {"external_lb", o.solver.external_lb ? Json(*o.solver.external_lb) : Json(nullptr)},
                  {"node_limit", o.solver.node_limit},
                  {"warm_start", std::string(to_string(o.warm_start))},
                  {"root_heuristic", o.root_heuristic},
                  {"pairs_bound", o.pairs_bound},
                  {"ls_moves", o.ls_moves},
                  {"ls_evaluations", o.ls_evaluations}};
  j["status"] = std::string(to_string(rec.status));
  j["objective"] = number_or_null(rec.objective);
  j["best_bound"] = number_or_null(rec.best_bound);
  j["gap"] = number_or_null(rec.gap);
  j["nodes"] = rec.nodes;
  j["lp_iterations"] = rec.lp_iterations;
  j["root_lp_bound"] = rec.root_lp_bound ? number_or_null(*rec.root_lp_bound) : Json(nullptr);
  if (rec.certificate) {
    const auto& c = *rec.certificate;
    j["certificate"] = {{"status", std::string(to_string(c.status))},
                        {"reported_objective", number_or_null(c.reported_objective)},
                        {"recomputed_objective", number_or_null(c.recomputed_objective)},
                        {"lower_bound", number_or_null(c.lower_bound)},
                        {"gap", number_or_null(c.gap)},
                        {"feasible", c.feasible},
                        {"violations", c.violations},
                        {"notes", c.notes}};
  }
  if (rec.runtime_s) j["runtime_s"] = *rec.runtime_s;
  return j.dump(2) + "\n";
}

ResultRecord parse_result_json(std::string_view text, std::string_view source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(source, 0, fmt::format("invalid JSON: {}", e.what()));
  }
  ResultRecord rec;
  try {
    rec.tool_version = j.at("version").get<std::string>();
    rec.roster_path = j.at("roster").get<std::string>();
    const auto& v = j.at("variant");
    const auto kind = parse_model_kind(v.at("kind").get<std::string>());
    if (!kind) fail(source, 0, "unknown variant");
    rec.variant.kind = *kind;
    rec.variant.weights = {v.at("weights").at("aom").get<double>(), v.at("weights").at("mom").get<double>()};
    rec.variant.deviation =
        v.at("deviation").get<std::string>() == "centered" ? DeviationMode::kCentered : DeviationMode::kScoreSum;
    rec.seed = j.at("seed").get<std::uint64_t>();
    const auto& o = j.at("options");
    rec.options.solver.time_limit_s = number_or(o.at("time_limit_s"), kInfinity);
    rec.options.solver.gap_abs = o.at("gap_abs").get<double>();
    rec.options.solver.gap_rel = o.at("gap_rel").get<double>();
    rec.options.solver.workers = o.at("workers").get<int>();
    rec.options.solver.seed = rec.seed;
    if (o.at("external_lb").is_number()) rec.options.solver.external_lb = o.at("external_lb").get<double>();
    rec.options.solver.node_limit = o.at("node_limit").get<long>();
    const auto ws = parse_warm_start(o.at("warm_start").get<std::string>());
    if (!ws) fail(source, 0, "unknown warm_start");
    rec.options.warm_start = *ws;
    rec.options.root_heuristic = o.at("root_heuristic").get<bool>();
    rec.options.pairs_bound = o.at("pairs_bound").get<bool>();
    rec.options.ls_moves = o.at("ls_moves").get<long>();
    rec.options.ls_evaluations = o.at("ls_evaluations").get<long>();
    const auto status = parse_solve_status(j.at("status").get<std::string>());
    if (!status) fail(source, 0, "unknown status");
    rec.status = *status;
    rec.objective = number_or(j.at("objective"), std::nan(""));
    rec.best_bound = number_or(j.at("best_bound"), kInfinity);
    rec.gap = number_or(j.at("gap"), kInfinity);
    rec.nodes = j.at("nodes").get<long>();
    rec.lp_iterations = j.at("lp_iterations").get<long>();
    if (j.at("root_lp_bound").is_number()) rec.root_lp_bound = j.at("root_lp_bound").get<double>();
    if (j.contains("certificate")) {
      const auto& c = j.at("certificate");
      Certificate cert;
      const auto cs = parse_certificate_status(c.at("status").get<std::string>());
      if (!cs) fail(source, 0, "unknown certificate status");
      cert.status = *cs;
      cert.reported_objective = number_or(c.at("reported_objective"), std::nan(""));
      cert.recomputed_objective = number_or(c.at("recomputed_objective"), std::nan(""));
      cert.lower_bound = number_or(c.at("lower_bound"), 0.0);
      cert.gap = number_or(c.at("gap"), kInfinity);
      cert.feasible = c.at("feasible").get<bool>();
      cert.violations = c.at("violations").get<int>();
      cert.notes = c.at("notes").get<std::vector<std::string>>();
      rec.certificate = std::move(cert);
    }
    if (j.contains("runtime_s")) rec.runtime_s = j.at("runtime_s").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(source, 0, fmt::format("malformed result: {}", e.what()));
  }
  return rec;
}

// ---- option files ---------------------------------------------------------------

GenSpec parse_gen_spec(std::string_view text, GenSpec base, std::string_view source) {
  const auto kv = parse_key_values(text, source);
  GenSpec spec = std::move(base);
  for (const auto& [key, value] : kv) {
    if (key != "preset") continue;
    const auto w = words(value);
    if (w.empty()) fail(source, 0, "empty preset");
    if (w[0] == "academy" && w.size() == 1) {
      spec = GenSpec::academy();
    } else if (w[0] == "desk" && w.size() == 3) {
      spec = GenSpec::desk(static_cast<int>(to_int(w[1], source, 0)), static_cast<int>(to_int(w[2], source, 0)));
    } else if (w[0] == "enrollment" && w.size() == 2) {
      spec = GenSpec::enrollment(static_cast<int>(to_int(w[1], source, 0)));
    } else {
      fail(source, 0, fmt::format("unknown preset '{}'", value));
    }
  }
  auto i = [&](const std::string& v) { return static_cast<int>(to_int(v, source, 0)); };
  auto d = [&](const std::string& v) { return to_double(v, source, 0); };
  for (const auto& [key, value] : kv) {
    if (key == "preset") continue;
    if (key == "companies") {
      spec.num_companies = i(value);
    } else if (key == "battalions") {
      spec.num_battalions = i(value);
    } else if (key == "min_size") {
      spec.min_size = i(value);
    } else if (key == "max_size") {
      spec.max_size = i(value);
    } else if (key == "sizes") {
      spec.sizes.clear();
      for (const auto& w : words(value)) spec.sizes.push_back(i(w));
    } else if (key.rfind("score.", 0) == 0) {
      int m = -1;
      for (int k = 0; k < kNumMerits; ++k) {
        if (key.substr(6) == to_string(static_cast<Merit>(k))) m = k;
      }
      const auto w = words(value);
      if (m < 0 || w.size() != 5) fail(source, 0, fmt::format("'{}' needs mean company_sd student_sd lo hi", key));
      spec.scores[static_cast<std::size_t>(m)] = {d(w[0]), d(w[1]), d(w[2]), d(w[3]), d(w[4])};
    } else if (key == "male_fraction") {
      spec.male_fraction = d(value);
    } else if (key == "white_fraction") {
      spec.white_fraction = d(value);
    } else if (key == "sports") {
      spec.sports = words(value);
    } else if (key == "athlete_fraction") {
      spec.athlete_fraction = d(value);
    } else if (key == "task_force_fraction") {
      spec.task_force_fraction = d(value);
    } else if (key == "prior_service_fraction") {
      spec.prior_service_fraction = d(value);
    } else if (key == "sapr_per_company") {
      spec.sapr_per_company = i(value);
    } else if (key == "min_sapr") {
      spec.min_sapr = i(value);
    } else if (key == "intl_per_company") {
      spec.intl_per_company = i(value);
    } else if (key == "international") {
      spec.international = i(value);
    } else if (key == "conflicts") {
      spec.conflicts = i(value);
    } else if (key == "cross_gender_conflicts") {
      spec.cross_gender_conflicts = to_bool(value, source, 0);
    } else if (key == "locked") {
      spec.locked = i(value);
    } else if (key == "count_padding") {
      spec.count_padding = i(value);
    } else if (key == "merit_padding") {
      const auto w = words(value);
      if (w.size() != 3) fail(source, 0, "merit_padding needs three numbers");
      spec.merit_padding = {d(w[0]), d(w[1]), d(w[2])};
    } else if (key == "fraction_padding") {
      spec.fraction_padding = d(value);
    } else if (key == "athlete_padding") {
      spec.athlete_padding = i(value);
    } else if (key == "side_constraints") {
      spec.side_constraints = to_bool(value, source, 0);
    } else {
      fail(source, 0, fmt::format("unknown key '{}'", key));
    }
  }
  return spec;
}

std::string gen_spec_config(const GenSpec& s) {
  std::vector<std::string> sizes;
  for (int n : s.sizes) sizes.push_back(std::to_string(n));
  std::string out;
  out += fmt::format("companies = {}\nbattalions = {}\nmin_size = {}\nmax_size = {}\n", s.num_companies,
                     s.num_battalions, s.min_size, s.max_size);
  if (!sizes.empty()) out += fmt::format("sizes = {}\n", join(sizes));
  for (int m = 0; m < kNumMerits; ++m) {
    const auto& sc = s.scores[static_cast<std::size_t>(m)];
    out += fmt::format("score.{} = {} {} {} {} {}\n", to_string(static_cast<Merit>(m)), format_double(sc.mean),
                       format_double(sc.company_sd), format_double(sc.student_sd), format_double(sc.lo),
                       format_double(sc.hi));
  }
  out += fmt::format("male_fraction = {}\nwhite_fraction = {}\n", format_double(s.male_fraction),
                     format_double(s.white_fraction));
  out += fmt::format("sports = {}\n", join(s.sports));
  out += fmt::format("athlete_fraction = {}\ntask_force_fraction = {}\nprior_service_fraction = {}\n",
                     format_double(s.athlete_fraction), format_double(s.task_force_fraction),
                     format_double(s.prior_service_fraction));
  out += fmt::format("sapr_per_company = {}\nmin_sapr = {}\nintl_per_company = {}\ninternational = {}\n",
                     s.sapr_per_company, s.min_sapr, s.intl_per_company, s.international);
  out += fmt::format("conflicts = {}\ncross_gender_conflicts = {:d}\nlocked = {}\n", s.conflicts,
                     s.cross_gender_conflicts, s.locked);
  out += fmt::format("count_padding = {}\nmerit_padding = {} {} {}\nfraction_padding = {}\nathlete_padding = {}\n",
                     s.count_padding, format_double(s.merit_padding[0]), format_double(s.merit_padding[1]),
                     format_double(s.merit_padding[2]), format_double(s.fraction_padding), s.athlete_padding);
  out += fmt::format("side_constraints = {:d}\n", s.side_constraints);
  return out;
}

RosterSolveOptions parse_solve_options(std::string_view text, RosterSolveOptions base, std::string_view source) {
  RosterSolveOptions o = std::move(base);
  for (const auto& [key, value] : parse_key_values(text, source)) {
    if (key == "time_limit_s") {
      o.solver.time_limit_s = value == "none" ? kInfinity : to_double(value, source, 0);
    } else if (key == "gap_abs") {
      o.solver.gap_abs = to_double(value, source, 0);
    } else if (key == "gap_rel") {
      o.solver.gap_rel = to_double(value, source, 0);
    } else if (key == "workers") {
      o.solver.workers = static_cast<int>(to_int(value, source, 0));
    } else if (key == "seed") {
      o.solver.seed = static_cast<std::uint64_t>(to_int(value, source, 0));
    } else if (key == "external_lb") {
      if (value == "none") {
        o.solver.external_lb.reset();
      } else {
        o.solver.external_lb = to_double(value, source, 0);
      }
    } else if (key == "warm_start") {
      const auto ws = parse_warm_start(value);
      if (!ws) fail(source, 0, "warm_start must be none, deal or deal+ls");
      o.warm_start = *ws;
    } else if (key == "node_limit") {
      o.solver.node_limit = static_cast<long>(to_int(value, source, 0));
    } else if (key == "root_heuristic") {
      o.root_heuristic = to_bool(value, source, 0);
    } else if (key == "pairs_bound") {
      o.pairs_bound = to_bool(value, source, 0);
    } else if (key == "ls_moves") {
      o.ls_moves = static_cast<long>(to_int(value, source, 0));
    } else if (key == "ls_evaluations") {
      o.ls_evaluations = static_cast<long>(to_int(value, source, 0));
    } else {
      fail(source, 0, fmt::format("unknown key '{}'", key));
    }
  }
  if (o.solver.workers < 1) fail(source, 0, "workers must be at least 1");
  return o;
}

}  // namespace cohort
