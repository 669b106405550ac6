#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohort/roster.hpp"

namespace cohort {

enum class ReportColumn : std::uint8_t { kAom, kMom, kMale, kWhite, kPrt, kSamePrevious };
inline constexpr int kNumReportColumns = 6;

/// Header text of a column: "AOM", "MOM", "%Male", "%White", "PRT", "%SamePrev".
std::string_view column_title(ReportColumn column);

enum class SummaryRow : std::uint8_t { kMinimum, kMaximum, kAverage, kStdDev, kMedian };
inline constexpr int kNumSummaryRows = 5;

std::string_view row_title(SummaryRow row);

struct CompanyRow {
  std::string label;
  int size = 0;
  /// Empty companies have no values.
  std::optional<std::array<double, kNumReportColumns>> values;
};

struct ReportTable {
  std::vector<CompanyRow> companies;
  /// Summary over non-empty companies; population standard deviation.
  std::array<std::array<double, kNumReportColumns>, kNumSummaryRows> summary{};
  std::vector<std::string> empty_companies;

  double at(SummaryRow row, ReportColumn column) const {
    return summary[static_cast<std::size_t>(row)][static_cast<std::size_t>(column)];
  }
};

/// Per-company averages and percentages under `asg`. %SamePrev is
/// 100 * (size - distinct old companies) / size.
ReportTable company_stats(const Roster& roster, const Assignment& asg);

enum class ReportFormat : std::uint8_t { kText, kCsv, kMarkdown };

std::optional<ReportFormat> parse_report_format(std::string_view text);

/// Text and markdown round to two decimals; CSV keeps full precision.
/// With `per_company` the company rows precede the summary.
std::string render(const ReportTable& table, ReportFormat format, bool per_company = false);

}  // namespace cohort
