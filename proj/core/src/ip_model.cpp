#include "cohort/ip_model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cohort/error.hpp"

namespace cohort {

int IpModel::add_variable(std::string name, double lower, double upper, VarType type) {
  const int col = num_cols();
  if (!name.empty()) {
    auto [it, inserted] = col_by_name_.emplace(name, col);
    if (!inserted) throw InputError(fmt::format("duplicate column name '{}'", name));
  }
  vars_.push_back({std::move(name), lower, upper, type});
  objective_.push_back(0.0);
  return col;
}

int IpModel::add_row(std::string name, std::span<const Term> terms, RowSense sense, double rhs,
                     ConstraintFamily family) {
  const std::size_t begin = cols_.size();
  if (slot_.size() < vars_.size()) slot_.resize(vars_.size(), -1);
  for (const auto& t : terms) {
    if (t.col < 0 || t.col >= num_cols()) {
      for (std::size_t k = begin; k < cols_.size(); ++k) slot_[static_cast<std::size_t>(cols_[k])] = -1;
      cols_.resize(begin);
      coefs_.resize(begin);
      throw InputError(fmt::format("row '{}' references unknown column {}", name, t.col));
    }
    auto& slot = slot_[static_cast<std::size_t>(t.col)];
    if (slot >= 0) {
      coefs_[begin + static_cast<std::size_t>(slot)] += t.coef;
    } else {
      slot = static_cast<int>(cols_.size() - begin);
      cols_.push_back(t.col);
      coefs_.push_back(t.coef);
    }
  }
  for (std::size_t k = begin; k < cols_.size(); ++k) slot_[static_cast<std::size_t>(cols_[k])] = -1;
  row_start_.push_back(cols_.size());
  senses_.push_back(sense);
  rhs_.push_back(rhs);
  row_names_.push_back(std::move(name));
  families_.push_back(family);
  return num_rows() - 1;
}

void IpModel::set_objective(int col, double coef) {
  if (col < 0 || col >= num_cols()) throw InputError(fmt::format("unknown objective column {}", col));
  objective_[static_cast<std::size_t>(col)] = coef;
}

std::span<const int> IpModel::row_cols(int row) const {
  const auto r = static_cast<std::size_t>(row);
  return std::span<const int>(cols_).subspan(row_start_[r], row_start_[r + 1] - row_start_[r]);
}

std::span<const double> IpModel::row_coefs(int row) const {
  const auto r = static_cast<std::size_t>(row);
  return std::span<const double>(coefs_).subspan(row_start_[r], row_start_[r + 1] - row_start_[r]);
}

int IpModel::count_rows(ConstraintFamily family) const {
  return static_cast<int>(std::count(families_.begin(), families_.end(), family));
}

int IpModel::count_cols(VarType type) const {
  return static_cast<int>(
      std::count_if(vars_.begin(), vars_.end(), [type](const auto& v) { return v.type == type; }));
}

std::optional<int> IpModel::find_column(std::string_view name) const {
  auto it = col_by_name_.find(std::string(name));
  if (it == col_by_name_.end()) return std::nullopt;
  return it->second;
}

double IpModel::row_activity(int row, std::span<const double> x) const {
  const auto cols = row_cols(row);
  const auto coefs = row_coefs(row);
  double sum = 0.0;
  for (std::size_t k = 0; k < cols.size(); ++k) sum += coefs[k] * x[static_cast<std::size_t>(cols[k])];
  return sum;
}

double IpModel::objective_value(std::span<const double> x) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < objective_.size(); ++j) {
    if (objective_[j] != 0.0) sum += objective_[j] * x[j];
  }
  return sum;
}

double IpModel::max_violation(std::span<const double> x) const {
  if (x.size() != vars_.size()) return kInfinity;
  double worst = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    if (!std::isfinite(x[j])) return kInfinity;
    worst = std::max({worst, vars_[j].lower - x[j], x[j] - vars_[j].upper});
  }
  for (int i = 0; i < num_rows(); ++i) {
    const double lhs = row_activity(i, x);
    const double rhs = row_rhs(i);
    switch (row_sense(i)) {
      case RowSense::kLe: worst = std::max(worst, lhs - rhs); break;
      case RowSense::kGe: worst = std::max(worst, rhs - lhs); break;
      case RowSense::kEq: worst = std::max(worst, std::abs(lhs - rhs)); break;
    }
  }
  return worst;
}

double IpModel::max_integrality_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    if (vars_[j].type == VarType::kBinary) worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
  }
  return worst;
}

bool IpModel::is_feasible(std::span<const double> x, double feas_tol, double int_tol) const {
  return max_violation(x) <= feas_tol && max_integrality_violation(x) <= int_tol;
}

bool IpModel::has_integral_objective() const {
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    const double c = objective_[j];
    if (c == 0.0) continue;
    if (vars_[j].type != VarType::kBinary) return false;
    if (c != std::round(c)) return false;
  }
  return true;
}

bool operator==(const IpModel& a, const IpModel& b) {
  if (a.vars_.size() != b.vars_.size()) return false;
  for (std::size_t j = 0; j < a.vars_.size(); ++j) {
    const auto& u = a.vars_[j];
    const auto& v = b.vars_[j];
    if (u.name != v.name || u.lower != v.lower || u.upper != v.upper || u.type != v.type) return false;
  }
  return a.objective_ == b.objective_ && a.row_start_ == b.row_start_ && a.cols_ == b.cols_ &&
         a.coefs_ == b.coefs_ && a.senses_ == b.senses_ && a.rhs_ == b.rhs_ &&
         a.row_names_ == b.row_names_ && a.families_ == b.families_;
}

}  // namespace cohort
