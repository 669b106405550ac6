#include "cohort/compiler.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cohort/error.hpp"
#include "cohort/feasibility.hpp"
#include "cohort/objectives.hpp"

namespace cohort {

std::vector<std::pair<int, int>> same_old_company_pairs(const Roster& roster) {
  std::vector<std::vector<int>> members(roster.companies.size());
  for (int a = 0; a < roster.num_students(); ++a) {
    members[static_cast<std::size_t>(roster.students[static_cast<std::size_t>(a)].old_company.value)]
        .push_back(a);
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& m : members) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) pairs.emplace_back(m[i], m[j]);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

namespace {

class Builder {
 public:
  Builder(const Roster& roster, const ModelVariant& variant, CompiledModel& out)
      : roster_(roster), variant_(variant), out_(out), ip_(out.ip) {}

  void build() {
    add_x_columns();
    if (variant_.kind == ModelKind::kDev) add_deviation_columns();
    if (variant_.kind == ModelKind::kPairs) add_pair_columns();

    add_one_company_rows();
    add_count_rows();
    add_merit_rows();
    add_fraction_rows();
    add_sport_rows();
    add_conflict_rows();
    add_sapr_rows();
    add_intl_rows();
    add_battalion_rows();
    if (variant_.no_stay()) add_no_stay_rows();
    if (variant_.kind == ModelKind::kDev) add_deviation_rows();
    if (variant_.kind == ModelKind::kPairs) add_pair_link_rows();
    set_objective();
  }

 private:
  const std::string& sid(int a) const { return roster_.students[static_cast<std::size_t>(a)].id; }
  const std::string& clabel(int c) const { return roster_.companies[static_cast<std::size_t>(c)].label; }
  int x(int a, int c) const { return out_.x.col(a, c); }
  int num_a() const { return roster_.num_students(); }
  int num_c() const { return roster_.num_companies(); }

  void add_x_columns() {
    out_.x = XLayout{num_a(), num_c(), ip_.num_cols()};
    for (int a = 0; a < num_a(); ++a) {
      for (int c = 0; c < num_c(); ++c) ip_.add_binary(fmt::format("x({},{})", sid(a), clabel(c)));
    }
    ip_.set_x_layout(out_.x);
  }

  void add_deviation_columns() {
    for (int c = 0; c < num_c(); ++c) {
      for (int d = 0; d < num_c(); ++d) {
        if (c != d) out_.company_pairs.emplace_back(c, d);
      }
    }
    out_.y_offset = ip_.num_cols();
    for (auto [c, d] : out_.company_pairs) {
      ip_.add_variable(fmt::format("y({},{})", clabel(c), clabel(d)), 0.0, kInfinity,
                       VarType::kContinuous);
    }
    out_.z_offset = ip_.num_cols();
    for (auto [c, d] : out_.company_pairs) {
      ip_.add_variable(fmt::format("z({},{})", clabel(c), clabel(d)), 0.0, kInfinity,
                       VarType::kContinuous);
    }
  }

  void add_pair_columns() {
    out_.student_pairs = same_old_company_pairs(roster_);
    out_.u_offset = ip_.num_cols();
    for (auto [i, j] : out_.student_pairs) ip_.add_binary(fmt::format("u({},{})", sid(i), sid(j)));
  }

  void row(std::string name, RowSense sense, double rhs, ConstraintFamily family) {
    ip_.add_row(std::move(name), terms_, sense, rhs, family);
    terms_.clear();
  }

  void add_one_company_rows() {
    for (int a = 0; a < num_a(); ++a) {
      for (int c = 0; c < num_c(); ++c) terms_.push_back({x(a, c), 1.0});
      row(fmt::format("one({})", sid(a)), RowSense::kEq, 1.0, ConstraintFamily::kOneCompany);
    }
  }

  void add_count_rows() {
    const auto& t = roster_.tolerances;
    for (bool is_max : {true, false}) {
      for (int q = 0; q < kNumQualities; ++q) {
        const auto quality = static_cast<Quality>(q);
        const auto& range = t.count[static_cast<std::size_t>(q)];
        for (int c = 0; c < num_c(); ++c) {
          for (int a = 0; a < num_a(); ++a) {
            if (roster_.students[static_cast<std::size_t>(a)].in_group(quality)) terms_.push_back({x(a, c), 1.0});
          }
          if (is_max) {
            row(fmt::format("cmax({},{})", to_string(quality), clabel(c)), RowSense::kLe, range.max,
                ConstraintFamily::kCountMax);
          } else {
            row(fmt::format("cmin({},{})", to_string(quality), clabel(c)), RowSense::kGe, range.min,
                ConstraintFamily::kCountMin);
          }
        }
      }
    }
  }

  // sum_a (value_a - bound) x[a,c] {<=,>=} 0
  void homogenised(const std::vector<double>& value, double bound, int c) {
    for (int a = 0; a < num_a(); ++a) {
      const double coef = value[static_cast<std::size_t>(a)] - bound;
      if (coef != 0.0) terms_.push_back({x(a, c), coef});
    }
  }

  void add_merit_rows() {
    const auto& t = roster_.tolerances;
    for (bool is_max : {true, false}) {
      for (int m = 0; m < kNumMerits; ++m) {
        const auto merit = static_cast<Merit>(m);
        std::vector<double> value;
        for (const auto& s : roster_.students) value.push_back(s.score(merit));
        const auto& range = t.avg_score[static_cast<std::size_t>(m)];
        for (int c = 0; c < num_c(); ++c) {
          homogenised(value, is_max ? range.max : range.min, c);
          if (is_max) {
            row(fmt::format("smax({},{})", to_string(merit), clabel(c)), RowSense::kLe, 0.0,
                ConstraintFamily::kMeritMax);
          } else {
            row(fmt::format("smin({},{})", to_string(merit), clabel(c)), RowSense::kGe, 0.0,
                ConstraintFamily::kMeritMin);
          }
        }
      }
    }
  }

  void add_fraction_rows() {
    const auto& t = roster_.tolerances;
    for (bool is_max : {true, false}) {
      for (int g = 0; g < kNumGenders; ++g) {
        const auto gender = static_cast<Gender>(g);
        std::vector<double> value;
        for (const auto& s : roster_.students) value.push_back(s.gender == gender ? 1.0 : 0.0);
        const auto& range = t.gender_fraction[static_cast<std::size_t>(g)];
        for (int c = 0; c < num_c(); ++c) {
          homogenised(value, is_max ? range.max : range.min, c);
          if (is_max) {
            row(fmt::format("gmax({},{})", to_string(gender), clabel(c)), RowSense::kLe, 0.0,
                ConstraintFamily::kGenderMax);
          } else {
            row(fmt::format("gmin({},{})", to_string(gender), clabel(c)), RowSense::kGe, 0.0,
                ConstraintFamily::kGenderMin);
          }
        }
      }
    }
    for (bool is_max : {true, false}) {
      for (std::size_t e = 0; e < t.race_fraction.size(); ++e) {
        std::vector<double> value;
        for (const auto& s : roster_.students) {
          value.push_back(static_cast<std::size_t>(s.race) == e ? 1.0 : 0.0);
        }
        const auto& range = t.race_fraction[e];
        for (int c = 0; c < num_c(); ++c) {
          homogenised(value, is_max ? range.max : range.min, c);
          if (is_max) {
            row(fmt::format("rmax({},{})", roster_.race_classes[e], clabel(c)), RowSense::kLe, 0.0,
                ConstraintFamily::kRaceMax);
          } else {
            row(fmt::format("rmin({},{})", roster_.race_classes[e], clabel(c)), RowSense::kGe, 0.0,
                ConstraintFamily::kRaceMin);
          }
        }
      }
    }
  }

  void add_sport_rows() {
    const auto& t = roster_.tolerances;
    for (std::size_t v = 0; v < t.max_athletes.size(); ++v) {
      for (int c = 0; c < num_c(); ++c) {
        for (int a = 0; a < num_a(); ++a) {
          const auto& sports = roster_.students[static_cast<std::size_t>(a)].sports;
          if (std::binary_search(sports.begin(), sports.end(), static_cast<int>(v))) {
            terms_.push_back({x(a, c), 1.0});
          }
        }
        row(fmt::format("sport({},{})", roster_.sports[v], clabel(c)), RowSense::kLe,
            t.max_athletes[v], ConstraintFamily::kSportMax);
      }
    }
  }

  void add_conflict_rows() {
    for (auto [r, rho] : roster_.conflict_pairs) {
      for (int c = 0; c < num_c(); ++c) {
        terms_.push_back({x(r, c), 1.0});
        terms_.push_back({x(rho, c), 1.0});
        row(fmt::format("conflict({},{},{})", sid(r), sid(rho), clabel(c)), RowSense::kLe, 1.0,
            ConstraintFamily::kConflict);
      }
    }
  }

  void add_sapr_rows() {
    for (int c : roster_.sapr_company_list()) {
      for (int a = 0; a < num_a(); ++a) {
        if (roster_.students[static_cast<std::size_t>(a)].sapr_guide) terms_.push_back({x(a, c), 1.0});
      }
      row(fmt::format("sapr({})", clabel(c)), RowSense::kGe, roster_.tolerances.min_sapr,
          ConstraintFamily::kSaprMin);
    }
  }

  void add_intl_rows() {
    for (int c : roster_.intl_company_list()) {
      for (int a = 0; a < num_a(); ++a) {
        if (roster_.students[static_cast<std::size_t>(a)].international) terms_.push_back({x(a, c), 1.0});
      }
      row(fmt::format("intl({})", clabel(c)), RowSense::kEq, roster_.tolerances.num_intl,
          ConstraintFamily::kIntlExact);
    }
  }

  void add_battalion_rows() {
    for (int a = 0; a < num_a(); ++a) {
      if (!roster_.students[static_cast<std::size_t>(a)].battalion_locked) continue;
      const auto admissible = admissible_companies(roster_, a, variant_.no_stay());
      if (admissible.empty()) {
        throw StructuralInfeasibility(fmt::format(
            "student {} is battalion-locked but no other company exists in that battalion", sid(a)));
      }
      for (int c : admissible) terms_.push_back({x(a, c), 1.0});
      row(fmt::format("batt({})", sid(a)), RowSense::kEq, 1.0, ConstraintFamily::kBattalion);
    }
  }

  void add_no_stay_rows() {
    for (int a = 0; a < num_a(); ++a) {
      terms_.push_back({x(a, roster_.students[static_cast<std::size_t>(a)].old_company.value), 1.0});
      row(fmt::format("nostay({})", sid(a)), RowSense::kEq, 0.0, ConstraintFamily::kNoStay);
    }
  }

  void add_deviation_rows() {
    struct Block {
      Merit merit;
      int offset;
      const char* tag;
      ConstraintFamily family;
    };
    const Block blocks[] = {
        {Merit::kAom, out_.y_offset, "y", ConstraintFamily::kAomDeviation},
        {Merit::kMom, out_.z_offset, "z", ConstraintFamily::kMomDeviation},
    };
    for (const auto& b : blocks) {
      const double shift =
          variant_.deviation == DeviationMode::kCentered ? roster_mean(roster_, b.merit) : 0.0;
      std::vector<double> value;
      for (const auto& s : roster_.students) value.push_back(s.score(b.merit) - shift);
      for (std::size_t k = 0; k < out_.company_pairs.size(); ++k) {
        const auto [c, d] = out_.company_pairs[k];
        const int dev_col = b.offset + static_cast<int>(k);
        for (double sign : {1.0, -1.0}) {
          for (int a = 0; a < num_a(); ++a) {
            const double v = value[static_cast<std::size_t>(a)];
            if (v == 0.0) continue;
            terms_.push_back({x(a, c), sign * v});
            terms_.push_back({x(a, d), -sign * v});
          }
          terms_.push_back({dev_col, -1.0});
          row(fmt::format("{}{}({},{})", b.tag, sign > 0 ? "pos" : "neg", clabel(c), clabel(d)),
              RowSense::kLe, 0.0, b.family);
        }
      }
    }
  }

  void add_pair_link_rows() {
    for (std::size_t k = 0; k < out_.student_pairs.size(); ++k) {
      const auto [i, j] = out_.student_pairs[k];
      const int u = out_.u_offset + static_cast<int>(k);
      for (int c = 0; c < num_c(); ++c) {
        terms_.push_back({x(i, c), 1.0});
        terms_.push_back({x(j, c), 1.0});
        terms_.push_back({u, -1.0});
        row(fmt::format("link({},{},{})", sid(i), sid(j), clabel(c)), RowSense::kLe, 1.0,
            ConstraintFamily::kPairLink);
      }
    }
  }

  void set_objective() {
    switch (variant_.kind) {
      case ModelKind::kMin:
        for (int a = 0; a < num_a(); ++a) {
          ip_.set_objective(x(a, roster_.students[static_cast<std::size_t>(a)].old_company.value), 1.0);
        }
        break;
      case ModelKind::kDev:
        for (std::size_t k = 0; k < out_.company_pairs.size(); ++k) {
          ip_.set_objective(out_.y_offset + static_cast<int>(k), variant_.weights.aom);
          ip_.set_objective(out_.z_offset + static_cast<int>(k), variant_.weights.mom);
        }
        break;
      case ModelKind::kPairs:
        for (std::size_t k = 0; k < out_.student_pairs.size(); ++k) {
          ip_.set_objective(out_.u_offset + static_cast<int>(k), 1.0);
        }
        break;
    }
  }

  const Roster& roster_;
  const ModelVariant& variant_;
  CompiledModel& out_;
  IpModel& ip_;
  std::vector<Term> terms_;
};

}  // namespace

CompiledModel compile(const Roster& roster, const ModelVariant& variant) {
  if (roster.students.empty()) throw InputError("cannot compile an empty roster");
  if (const auto defects = validate_roster(roster); !defects.empty()) {
    throw InputError(fmt::format("roster is malformed: {} ({})", to_string(defects.front().kind),
                                 defects.front().subject));
  }
  if (variant.kind != ModelKind::kMin && variant.kind != ModelKind::kDev &&
      variant.kind != ModelKind::kPairs) {
    throw InputError("unknown model variant");
  }
  if (variant.no_stay() && roster.num_companies() < 2) {
    throw StructuralInfeasibility(
        fmt::format("{} needs at least two companies", to_string(variant.kind)));
  }
  CompiledModel out;
  out.variant = variant;
  Builder(roster, variant, out).build();
  return out;
}

std::vector<double> complete_solution(const CompiledModel& model, const Roster& roster,
                                      const Assignment& asg) {
  require_total(roster, asg);
  std::vector<double> x(static_cast<std::size_t>(model.ip.num_cols()), 0.0);
  for (int a = 0; a < roster.num_students(); ++a) {
    x[static_cast<std::size_t>(model.x.col(a, asg[static_cast<std::size_t>(a)].value))] = 1.0;
  }
  if (model.variant.kind == ModelKind::kDev) {
    const auto aom = company_score_sums(roster, asg, Merit::kAom, model.variant.deviation);
    const auto mom = company_score_sums(roster, asg, Merit::kMom, model.variant.deviation);
    for (std::size_t k = 0; k < model.company_pairs.size(); ++k) {
      const auto [c, d] = model.company_pairs[k];
      const auto ci = static_cast<std::size_t>(c);
      const auto di = static_cast<std::size_t>(d);
      x[static_cast<std::size_t>(model.y_offset) + k] = std::abs(aom[ci] - aom[di]);
      x[static_cast<std::size_t>(model.z_offset) + k] = std::abs(mom[ci] - mom[di]);
    }
  }
  if (model.variant.kind == ModelKind::kPairs) {
    for (std::size_t k = 0; k < model.student_pairs.size(); ++k) {
      const auto [i, j] = model.student_pairs[k];
      if (asg[static_cast<std::size_t>(i)] == asg[static_cast<std::size_t>(j)]) {
        x[static_cast<std::size_t>(model.u_offset) + k] = 1.0;
      }
    }
  }
  return x;
}

}  // namespace cohort
