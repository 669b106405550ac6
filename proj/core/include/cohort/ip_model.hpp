#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cohort/constraint_family.hpp"

namespace cohort {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarType : std::uint8_t { kContinuous, kBinary };
enum class RowSense : std::uint8_t { kLe, kGe, kEq };

struct Term {
  int col = 0;
  double coef = 0.0;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  VarType type = VarType::kContinuous;
};

/// Column layout of the assignment block x[a,c], stored row-major by student.
struct XLayout {
  int num_students = 0;
  int num_companies = 0;
  int offset = 0;
  int col(int student, int company) const { return offset + student * num_companies + company; }
};

/// Sparse mixed-binary program, always a minimisation. Rows are stored in
/// compressed form; duplicate columns inside one row are merged on insertion.
class IpModel {
 public:
  int add_variable(std::string name, double lower, double upper, VarType type);
  int add_binary(std::string name) { return add_variable(std::move(name), 0.0, 1.0, VarType::kBinary); }

  /// Appends a row `sum(terms) sense rhs`. Throws InputError on an unknown column.
  int add_row(std::string name, std::span<const Term> terms, RowSense sense, double rhs,
              ConstraintFamily family = ConstraintFamily::kUser);

  void set_objective(int col, double coef);
  void set_x_layout(XLayout layout) { x_layout_ = layout; }

  int num_cols() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(senses_.size()); }
  std::size_t num_nonzeros() const { return cols_.size(); }

  const Variable& variable(int col) const { return vars_[static_cast<std::size_t>(col)]; }
  std::span<const Variable> variables() const { return vars_; }
  std::span<const int> row_cols(int row) const;
  std::span<const double> row_coefs(int row) const;
  RowSense row_sense(int row) const { return senses_[static_cast<std::size_t>(row)]; }
  double row_rhs(int row) const { return rhs_[static_cast<std::size_t>(row)]; }
  const std::string& row_name(int row) const { return row_names_[static_cast<std::size_t>(row)]; }
  ConstraintFamily row_family(int row) const { return families_[static_cast<std::size_t>(row)]; }
  int count_rows(ConstraintFamily family) const;
  int count_cols(VarType type) const;

  /// Dense objective, one coefficient per column.
  std::span<const double> objective() const { return objective_; }
  const std::optional<XLayout>& x_layout() const { return x_layout_; }
  std::optional<int> find_column(std::string_view name) const;

  double row_activity(int row, std::span<const double> x) const;
  double objective_value(std::span<const double> x) const;
  /// Largest bound or row violation of `x` (0 when feasible).
  double max_violation(std::span<const double> x) const;
  /// Largest distance of a binary column from {0, 1}.
  double max_integrality_violation(std::span<const double> x) const;
  bool is_feasible(std::span<const double> x, double feas_tol, double int_tol) const;
  /// True when every feasible point has an integral objective value.
  bool has_integral_objective() const;

  friend bool operator==(const IpModel&, const IpModel&);

 private:
  std::vector<Variable> vars_;
  std::vector<double> objective_;
  std::unordered_map<std::string, int> col_by_name_;
  std::vector<std::size_t> row_start_{0};
  std::vector<int> cols_;
  std::vector<double> coefs_;
  std::vector<RowSense> senses_;
  std::vector<double> rhs_;
  std::vector<std::string> row_names_;
  std::vector<ConstraintFamily> families_;
  std::optional<XLayout> x_layout_;
  std::vector<int> slot_;  // scratch for merging duplicate columns in add_row
};

}  // namespace cohort
