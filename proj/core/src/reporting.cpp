#include "cohort/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace cohort {

std::string_view column_title(ReportColumn column) {
  switch (column) {
    case ReportColumn::kAom: return "AOM";
    case ReportColumn::kMom: return "MOM";
    case ReportColumn::kMale: return "%Male";
    case ReportColumn::kWhite: return "%White";
    case ReportColumn::kPrt: return "PRT";
    case ReportColumn::kSamePrevious: return "%SamePrev";
  }
  return "?";
}

std::string_view row_title(SummaryRow row) {
  switch (row) {
    case SummaryRow::kMinimum: return "minimum";
    case SummaryRow::kMaximum: return "maximum";
    case SummaryRow::kAverage: return "average";
    case SummaryRow::kStdDev: return "stddev";
    case SummaryRow::kMedian: return "median";
  }
  return "?";
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::kText;
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "markdown" || text == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

ReportTable company_stats(const Roster& roster, const Assignment& asg) {
  require_total(roster, asg);
  const auto nc = static_cast<std::size_t>(roster.num_companies());
  const int white = roster.white_race_class();

  struct Acc {
    int size = 0;
    double aom = 0.0, mom = 0.0, prt = 0.0;
    int male = 0, white = 0;
    std::set<int> olds;
  };
  std::vector<Acc> acc(nc);
  for (std::size_t a = 0; a < roster.students.size(); ++a) {
    const auto& s = roster.students[a];
    auto& t = acc[static_cast<std::size_t>(asg[a].value)];
    ++t.size;
    t.aom += s.aom();
    t.mom += s.mom();
    t.prt += s.prt();
    if (s.gender == Gender::kMale) ++t.male;
    if (s.race == white) ++t.white;
    t.olds.insert(s.old_company.value);
  }

  ReportTable table;
  std::array<std::vector<double>, kNumReportColumns> columns;
  for (std::size_t c = 0; c < nc; ++c) {
    const auto& t = acc[c];
    CompanyRow row{roster.companies[c].label, t.size, std::nullopt};
    if (t.size == 0) {
      table.empty_companies.push_back(row.label);
    } else {
      const double n = t.size;
      row.values = std::array<double, kNumReportColumns>{
          t.aom / n,
          t.mom / n,
          100.0 * t.male / n,
          100.0 * t.white / n,
          t.prt / n,
          100.0 * (n - static_cast<double>(t.olds.size())) / n,
      };
      for (int k = 0; k < kNumReportColumns; ++k) {
        columns[static_cast<std::size_t>(k)].push_back((*row.values)[static_cast<std::size_t>(k)]);
      }
    }
    table.companies.push_back(std::move(row));
  }

  for (int k = 0; k < kNumReportColumns; ++k) {
    auto values = columns[static_cast<std::size_t>(k)];
    if (values.empty()) {
      for (auto& row : table.summary) row[static_cast<std::size_t>(k)] = std::nan("");
      continue;
    }
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= n;
    const std::size_t mid = values.size() / 2;
    const double median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    auto set = [&](SummaryRow r, double v) {
      table.summary[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = v;
    };
    set(SummaryRow::kMinimum, values.front());
    set(SummaryRow::kMaximum, values.back());
    set(SummaryRow::kAverage, mean);
    set(SummaryRow::kStdDev, std::sqrt(var));
    set(SummaryRow::kMedian, median);
  }
  return table;
}

namespace {

std::string cell(double v, ReportFormat format) {
  if (std::isnan(v)) return "-";
  if (format == ReportFormat::kCsv) return fmt::format("{}", v);
  return fmt::format("{:.2f}", v);
}

}  // namespace

std::string render(const ReportTable& table, ReportFormat format, bool per_company) {
  std::vector<std::vector<std::string>> rows;
  auto add_values = [&](std::string label, const std::array<double, kNumReportColumns>* values) {
    std::vector<std::string> row{std::move(label)};
    for (int k = 0; k < kNumReportColumns; ++k) {
      row.push_back(values ? cell((*values)[static_cast<std::size_t>(k)], format) : "-");
    }
    rows.push_back(std::move(row));
  };
  if (per_company) {
    for (const auto& c : table.companies) add_values(c.label, c.values ? &*c.values : nullptr);
  }
  for (int r = 0; r < kNumSummaryRows; ++r) {
    add_values(std::string(row_title(static_cast<SummaryRow>(r))), &table.summary[static_cast<std::size_t>(r)]);
  }

  std::vector<std::string> header{""};
  for (int k = 0; k < kNumReportColumns; ++k) header.emplace_back(column_title(static_cast<ReportColumn>(k)));

  std::string out;
  switch (format) {
    case ReportFormat::kCsv: {
      header[0] = "row";
      auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
        out += '\n';
      };
      line(header);
      for (const auto& r : rows) line(r);
      break;
    }
    case ReportFormat::kMarkdown: {
      auto line = [&](const std::vector<std::string>& r) {
        out += "|";
        for (const auto& v : r) out += " " + v + " |";
        out += '\n';
      };
      line(header);
      out += "|";
      for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
      out += '\n';
      for (const auto& r : rows) line(r);
      break;
    }
    case ReportFormat::kText: {
      std::vector<std::size_t> width(header.size(), 0);
      auto measure = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
      };
      measure(header);
      for (const auto& r : rows) measure(r);
      auto line = [&](const std::vector<std::string>& r) {
        std::string text;
        for (std::size_t i = 0; i < r.size(); ++i) {
          text += i == 0 ? fmt::format("{:<{}}", r[i], width[i]) : fmt::format("  {:>{}}", r[i], width[i]);
        }
        while (!text.empty() && text.back() == ' ') text.pop_back();
        out += text + '\n';
      };
      line(header);
      for (const auto& r : rows) line(r);
      break;
    }
  }
  if (!table.empty_companies.empty()) {
    std::string names;
    for (const auto& n : table.empty_companies) names += (names.empty() ? "" : ", ") + n;
    out += (format == ReportFormat::kCsv ? "# empty companies: " : "empty companies: ") + names + '\n';
  }
  return out;
}

}  // namespace cohort
