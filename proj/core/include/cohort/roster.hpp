#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cohort {

/// Index of a company within Roster::companies.
struct CompanyId {
  int value = 0;
  friend constexpr auto operator<=>(CompanyId, CompanyId) = default;
};

enum class Gender : std::uint8_t { kMale = 0, kFemale = 1 };
inline constexpr int kNumGenders = 2;

/// Student groups whose head count is bounded per company.
enum class Quality : std::uint8_t { kAll = 0, kTaskForce = 1, kPriorService = 2 };
inline constexpr int kNumQualities = 3;

enum class Merit : std::uint8_t { kAom = 0, kMom = 1, kPrt = 2 };
inline constexpr int kNumMerits = 3;

const char* to_string(Gender g);
const char* to_string(Quality q);
const char* to_string(Merit m);

struct Student {
  std::string id;
  std::array<double, kNumMerits> scores{};  // indexed by Merit
  Gender gender = Gender::kMale;
  int race = 0;  // index into Roster::race_classes
  CompanyId old_company;
  bool task_force = false;
  bool prior_service = false;
  bool sapr_guide = false;
  bool international = false;
  bool battalion_locked = false;
  std::vector<int> sports;  // indices into Roster::sports, ascending

  double score(Merit m) const { return scores[static_cast<int>(m)]; }
  double aom() const { return score(Merit::kAom); }
  double mom() const { return score(Merit::kMom); }
  double prt() const { return score(Merit::kPrt); }
  bool in_group(Quality q) const;

  friend bool operator==(const Student&, const Student&) = default;
};

struct Company {
  std::string label;
  int battalion = 0;  // index into Roster::battalions

  friend bool operator==(const Company&, const Company&) = default;
};

struct CountRange {
  int min = 0;
  int max = 0;
  friend bool operator==(const CountRange&, const CountRange&) = default;
};

struct Range {
  double min = 0.0;
  double max = 0.0;
  friend bool operator==(const Range&, const Range&) = default;
};

/// Per-company limits. Fractions are in [0, 1]; averages are in score units.
struct Tolerances {
  std::array<CountRange, kNumQualities> count{};
  std::array<Range, kNumMerits> avg_score{};
  std::array<Range, kNumGenders> gender_fraction{};
  std::vector<Range> race_fraction;  // one per race class
  std::vector<int> max_athletes;     // one per sport
  int min_sapr = 0;
  int num_intl = 1;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct Weights {
  double aom = 0.5;
  double mom = 0.5;
  friend bool operator==(const Weights&, const Weights&) = default;
};

/// How company score totals are compared in the deviation model.
///  - kScoreSum: raw score sums per company.
///  - kCentered: scores shifted by the roster mean before summing, so a
///    company is not penalised only for having more members.
enum class DeviationMode : std::uint8_t { kScoreSum = 0, kCentered = 1 };

const char* to_string(DeviationMode mode);

/// A full problem instance. Immutable once handed to the solver.
struct Roster {
  std::vector<Student> students;
  std::vector<Company> companies;
  std::vector<std::string> battalions;
  std::vector<std::string> race_classes{"white", "other"};
  std::vector<std::string> sports;
  std::vector<std::pair<int, int>> conflict_pairs;  // student indices
  Tolerances tolerances;
  Weights weights;
  DeviationMode deviation_mode = DeviationMode::kScoreSum;
  /// Companies needing SAPR guides / international students. nullopt = all.
  std::optional<std::vector<int>> sapr_companies;
  std::optional<std::vector<int>> intl_companies;

  int num_students() const { return static_cast<int>(students.size()); }
  int num_companies() const { return static_cast<int>(companies.size()); }

  std::vector<int> sapr_company_list() const;
  std::vector<int> intl_company_list() const;
  std::vector<int> companies_in_battalion(int battalion) const;
  /// Number of students per old company, indexed by company.
  std::vector<int> old_company_sizes() const;
  /// Race class used for the "% white" report column.
  int white_race_class() const;
  std::optional<int> find_student(std::string_view id) const;
  std::optional<int> find_company(std::string_view label) const;

  friend bool operator==(const Roster&, const Roster&) = default;
};

/// New company for every student, indexed like Roster::students.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<CompanyId> targets) : targets_(std::move(targets)) {}

  /// Everyone stays where they were.
  static Assignment identity(const Roster& roster);

  CompanyId operator[](std::size_t student) const { return targets_[student]; }
  void set(std::size_t student, CompanyId company) { targets_[student] = company; }
  std::size_t size() const { return targets_.size(); }
  std::span<const CompanyId> targets() const { return targets_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<CompanyId> targets_;
};

/// Throws InputError unless the assignment is total over the roster and every
/// target is a valid company.
void require_total(const Roster& roster, const Assignment& asg);

enum class ViolationKind : std::uint8_t {
  kNoCompanies,
  kEmptyId,
  kDuplicateId,
  kBadLabel,
  kUnknownCompany,
  kUnknownBattalion,
  kUnevenBattalions,
  kBadScore,
  kUnknownRace,
  kUnknownSport,
  kInvertedBound,
  kFractionOutOfRange,
  kToleranceShape,
  kBadConflictPair,
  kBadWeights,
  kBadCompanySubset,
};

const char* to_string(ViolationKind kind);

/// A structural defect in a roster. `subject` names the offending item.
struct Violation {
  ViolationKind kind;
  std::string subject;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every structural defect of the instance. Empty means well-formed, which
/// says nothing about feasibility.
std::vector<Violation> validate_roster(const Roster& roster);

}  // namespace cohort
