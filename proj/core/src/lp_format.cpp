#include "cohort/lp_format.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "cohort/error.hpp"

namespace cohort {
namespace {

constexpr int kTermsPerLine = 6;

std::string number(double v) {
  if (v == kInfinity) return "+inf";
  if (v == -kInfinity) return "-inf";
  return fmt::format("{}", v);
}

// Emits " c1 name1 + c2 name2 - c3 name3", wrapping long expressions.
void write_terms(std::ostream& out, const IpModel& model, std::span<const int> cols,
                 std::span<const double> coefs) {
  if (cols.empty()) {
    // The grammar needs at least one term; a zero coefficient keeps the row.
    out << " 0 " << model.variable(0).name;
    return;
  }
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (k > 0 && k % kTermsPerLine == 0) out << "\n  ";
    const double c = coefs[k];
    if (k == 0) {
      out << ' ' << (c < 0 ? "-" : "") << number(std::abs(c));
    } else {
      out << (c < 0 ? " - " : " + ") << number(std::abs(c));
    }
    out << ' ' << model.variable(cols[k]).name;
  }
}

}  // namespace

void write_lp(const IpModel& model, std::ostream& out) {
  if (model.num_cols() == 0) throw InputError("cannot export a model without columns");
  out << "\\ cohort-shuffle LP export\n";
  out << "\\ columns: " << model.num_cols() << "  rows: " << model.num_rows() << '\n';

  out << "Minimize\n obj:";
  {
    std::vector<int> cols;
    std::vector<double> coefs;
    const auto obj = model.objective();
    for (int j = 0; j < model.num_cols(); ++j) {
      if (obj[static_cast<std::size_t>(j)] != 0.0) {
        cols.push_back(j);
        coefs.push_back(obj[static_cast<std::size_t>(j)]);
      }
    }
    write_terms(out, model, cols, coefs);
    out << '\n';
  }

  out << "Subject To\n";
  for (int i = 0; i < model.num_rows(); ++i) {
    out << ' ' << model.row_name(i) << ':';
    write_terms(out, model, model.row_cols(i), model.row_coefs(i));
    switch (model.row_sense(i)) {
      case RowSense::kLe: out << " <= "; break;
      case RowSense::kGe: out << " >= "; break;
      case RowSense::kEq: out << " = "; break;
    }
    out << number(model.row_rhs(i)) << '\n';
  }

  out << "Bounds\n";
  for (const auto& v : model.variables()) {
    if (v.type == VarType::kBinary && v.lower == 0.0 && v.upper == 1.0) continue;
    if (v.type == VarType::kContinuous && v.lower == 0.0 && v.upper == kInfinity) continue;
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      out << ' ' << v.name << " free\n";
    } else if (v.lower == v.upper) {
      out << ' ' << v.name << " = " << number(v.lower) << '\n';
    } else {
      out << ' ' << number(v.lower) << " <= " << v.name << " <= " << number(v.upper) << '\n';
    }
  }

  bool any_binary = false;
  int on_line = 0;
  for (const auto& v : model.variables()) {
    if (v.type != VarType::kBinary) continue;
    if (!any_binary) {
      out << "Binaries\n";
      any_binary = true;
    }
    out << ' ' << v.name;
    if (++on_line == kTermsPerLine) {
      out << '\n';
      on_line = 0;
    }
  }
  if (any_binary && on_line != 0) out << '\n';
  out << "End\n";
}

std::string to_lp_string(const IpModel& model) {
  std::ostringstream out;
  write_lp(model, out);
  return out.str();
}

void export_lp(const IpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot open '{}' for writing", path.string()));
  write_lp(model, out);
  out.flush();
  if (!out) throw InputError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace cohort
