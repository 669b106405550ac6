#include "cohort/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cohort/error.hpp"
#include "cohort/feasibility.hpp"
#include "cohort/objectives.hpp"

namespace cohort {

Assignment cyclic_deal(const Roster& roster) {
  const int nc = roster.num_companies();
  if (nc < 2) return Assignment::identity(roster);
  std::vector<int> dealt(static_cast<std::size_t>(nc), 0);
  std::vector<CompanyId> targets(roster.students.size());
  for (std::size_t a = 0; a < roster.students.size(); ++a) {
    const int o = roster.students[a].old_company.value;
    const int k = dealt[static_cast<std::size_t>(o)]++;
    targets[a] = CompanyId{(o + 1 + k % (nc - 1)) % nc};
  }
  return Assignment(std::move(targets));
}

Assignment round_assignment(const Roster& roster, const XLayout& layout,
                            std::span<const double> primal, bool no_stay) {
  std::vector<CompanyId> targets(roster.students.size());
  for (int a = 0; a < roster.num_students(); ++a) {
    auto allowed = admissible_companies(roster, a, no_stay);
    if (allowed.empty()) allowed.push_back(roster.students[static_cast<std::size_t>(a)].old_company.value);
    int best = allowed.front();
    double best_v = -kInfinity;
    for (int c : allowed) {
      const double v = primal[static_cast<std::size_t>(layout.col(a, c))];
      if (v > best_v) {
        best_v = v;
        best = c;
      }
    }
    targets[static_cast<std::size_t>(a)] = CompanyId{best};
  }
  return Assignment(std::move(targets));
}

namespace {

// Excess below this is treated as satisfied; well inside the checker's 1e-6.
constexpr double kSlack = 1e-9;
constexpr double kImprove = 1e-9;

struct Tally {
  int size = 0;
  std::array<int, kNumQualities> quality{};
  std::array<double, kNumMerits> score{};
  std::array<int, kNumGenders> gender{};
  std::vector<int> race;
  std::vector<int> sport;
  int sapr = 0;
  int intl = 0;
};

class SearchState {
 public:
  SearchState(const Roster& roster, const Assignment& start, const ModelVariant& variant)
      : roster_(roster), variant_(variant), asg_(start) {
    const auto nc = static_cast<std::size_t>(roster.num_companies());
    const auto na = roster.students.size();
    tallies_.resize(nc);
    for (auto& t : tallies_) {
      t.race.assign(roster.race_classes.size(), 0);
      t.sport.assign(roster.sports.size(), 0);
    }
    for (int m = 0; m < kNumMerits; ++m) {
      const double mean = roster_mean(roster, static_cast<Merit>(m));
      merit_scale_[static_cast<std::size_t>(m)] = std::abs(mean) > 0.0 ? std::abs(mean) : 1.0;
    }
    is_sapr_.assign(nc, 0);
    for (int c : roster.sapr_company_list()) is_sapr_[static_cast<std::size_t>(c)] = 1;
    is_intl_.assign(nc, 0);
    for (int c : roster.intl_company_list()) is_intl_[static_cast<std::size_t>(c)] = 1;

    allowed_.assign(na * nc, 0);
    partners_.resize(na);
    for (std::size_t a = 0; a < na; ++a) {
      for (int c : admissible_companies(roster, static_cast<int>(a), variant.no_stay())) {
        allowed_[a * nc + static_cast<std::size_t>(c)] = 1;
      }
    }
    for (auto [r, s] : roster.conflict_pairs) {
      partners_[static_cast<std::size_t>(r)].push_back(s);
      partners_[static_cast<std::size_t>(s)].push_back(r);
    }
    if (variant.kind == ModelKind::kDev) {
      const bool centered = variant.deviation == DeviationMode::kCentered;
      const double mean_aom = centered ? roster_mean(roster, Merit::kAom) : 0.0;
      const double mean_mom = centered ? roster_mean(roster, Merit::kMom) : 0.0;
      dev_value_.resize(na);
      for (std::size_t a = 0; a < na; ++a) {
        dev_value_[a] = {roster.students[a].aom() - mean_aom, roster.students[a].mom() - mean_mom};
      }
      dev_sum_.assign(nc, {0.0, 0.0});
    }
    if (variant.kind == ModelKind::kPairs) cells_.assign(nc * nc, 0);

    for (std::size_t a = 0; a < na; ++a) add(a, asg_[a].value, +1);
    company_violation_.resize(nc);
    for (std::size_t c = 0; c < nc; ++c) company_violation_[c] = company_violation(static_cast<int>(c));
    conflicts_ = 0;
    for (auto [r, s] : roster.conflict_pairs) {
      if (asg_[static_cast<std::size_t>(r)] == asg_[static_cast<std::size_t>(s)]) ++conflicts_;
    }
    placement_ = 0;
    for (std::size_t a = 0; a < na; ++a) placement_ += allowed(a, asg_[a].value) ? 0 : 1;
    objective_ = initial_objective();
  }

  double violation() const {
    double v = static_cast<double>(conflicts_ + placement_);
    for (double cv : company_violation_) v += cv;
    return v;
  }
  double objective() const { return objective_; }
  const Assignment& assignment() const { return asg_; }
  // Undoing a move re-adds floating-point terms; pin the value it had.
  void pin_objective(double value) { objective_ = value; }
  int company_of(std::size_t a) const { return asg_[a].value; }

  // Moves one student and updates every cached quantity.
  void move(std::size_t a, int to) {
    const int from = asg_[a].value;
    if (from == to) return;
    objective_ += objective_delta(a, from, to);
    for (int p : partners_[a]) {
      const int pc = asg_[static_cast<std::size_t>(p)].value;
      if (pc == from) --conflicts_;
      if (pc == to) ++conflicts_;
    }
    placement_ += (allowed(a, to) ? 0 : 1) - (allowed(a, from) ? 0 : 1);
    add(a, from, -1);
    add(a, to, +1);
    asg_.set(a, CompanyId{to});
    company_violation_[static_cast<std::size_t>(from)] = company_violation(from);
    company_violation_[static_cast<std::size_t>(to)] = company_violation(to);
  }

 private:
  bool allowed(std::size_t a, int c) const {
    return allowed_[a * static_cast<std::size_t>(roster_.num_companies()) + static_cast<std::size_t>(c)] != 0;
  }

  void add(std::size_t a, int c, int sign) {
    const auto& s = roster_.students[a];
    auto& t = tallies_[static_cast<std::size_t>(c)];
    t.size += sign;
    for (int q = 0; q < kNumQualities; ++q) {
      if (s.in_group(static_cast<Quality>(q))) t.quality[static_cast<std::size_t>(q)] += sign;
    }
    for (int m = 0; m < kNumMerits; ++m) t.score[static_cast<std::size_t>(m)] += sign * s.scores[static_cast<std::size_t>(m)];
    t.gender[static_cast<std::size_t>(s.gender)] += sign;
    if (s.race >= 0 && static_cast<std::size_t>(s.race) < t.race.size()) t.race[static_cast<std::size_t>(s.race)] += sign;
    for (int v : s.sports) t.sport[static_cast<std::size_t>(v)] += sign;
    if (s.sapr_guide) t.sapr += sign;
    if (s.international) t.intl += sign;
    if (!dev_sum_.empty()) {
      dev_sum_[static_cast<std::size_t>(c)][0] += sign * dev_value_[a][0];
      dev_sum_[static_cast<std::size_t>(c)][1] += sign * dev_value_[a][1];
    }
    if (!cells_.empty()) {
      cells_[static_cast<std::size_t>(s.old_company.value) * static_cast<std::size_t>(roster_.num_companies()) +
             static_cast<std::size_t>(c)] += sign;
    }
  }

  double company_violation(int c) const {
    const auto& tol = roster_.tolerances;
    const auto& t = tallies_[static_cast<std::size_t>(c)];
    const double size = t.size;
    double v = 0.0;
    auto over = [&](double excess, double scale) {
      if (excess > kSlack) v += excess / scale;
    };
    for (int q = 0; q < kNumQualities; ++q) {
      const auto& r = tol.count[static_cast<std::size_t>(q)];
      const int n = t.quality[static_cast<std::size_t>(q)];
      over(n - r.max, 1.0);
      over(r.min - n, 1.0);
    }
    for (int m = 0; m < kNumMerits; ++m) {
      const auto& r = tol.avg_score[static_cast<std::size_t>(m)];
      const double sum = t.score[static_cast<std::size_t>(m)];
      const double scale = merit_scale_[static_cast<std::size_t>(m)];
      over(sum - r.max * size, scale);
      over(r.min * size - sum, scale);
    }
    for (int g = 0; g < kNumGenders; ++g) {
      const auto& r = tol.gender_fraction[static_cast<std::size_t>(g)];
      const double n = t.gender[static_cast<std::size_t>(g)];
      over(n - r.max * size, 1.0);
      over(r.min * size - n, 1.0);
    }
    for (std::size_t e = 0; e < tol.race_fraction.size() && e < t.race.size(); ++e) {
      const auto& r = tol.race_fraction[e];
      over(t.race[e] - r.max * size, 1.0);
      over(r.min * size - t.race[e], 1.0);
    }
    for (std::size_t s = 0; s < tol.max_athletes.size() && s < t.sport.size(); ++s) {
      over(t.sport[s] - tol.max_athletes[s], 1.0);
    }
    if (is_sapr_[static_cast<std::size_t>(c)]) over(tol.min_sapr - t.sapr, 1.0);
    if (is_intl_[static_cast<std::size_t>(c)]) over(std::abs(t.intl - tol.num_intl), 1.0);
    return v;
  }

  double dev_total() const {
    const auto nc = dev_sum_.size();
    double aom = 0.0;
    double mom = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t d = c + 1; d < nc; ++d) {
        aom += std::abs(dev_sum_[c][0] - dev_sum_[d][0]);
        mom += std::abs(dev_sum_[c][1] - dev_sum_[d][1]);
      }
    }
    return 2.0 * (variant_.weights.aom * aom + variant_.weights.mom * mom);
  }

  // Weighted deviation terms that involve company c or d.
  double dev_local(int c, int d) const {
    const auto& sc = dev_sum_[static_cast<std::size_t>(c)];
    const auto& sd = dev_sum_[static_cast<std::size_t>(d)];
    double aom = std::abs(sc[0] - sd[0]);
    double mom = std::abs(sc[1] - sd[1]);
    for (std::size_t e = 0; e < dev_sum_.size(); ++e) {
      if (static_cast<int>(e) == c || static_cast<int>(e) == d) continue;
      const auto& se = dev_sum_[e];
      aom += std::abs(sc[0] - se[0]) + std::abs(sd[0] - se[0]);
      mom += std::abs(sc[1] - se[1]) + std::abs(sd[1] - se[1]);
    }
    return 2.0 * (variant_.weights.aom * aom + variant_.weights.mom * mom);
  }

  double objective_delta(std::size_t a, int from, int to) {
    const auto& s = roster_.students[a];
    switch (variant_.kind) {
      case ModelKind::kMin:
        return (to == s.old_company.value ? 1.0 : 0.0) - (from == s.old_company.value ? 1.0 : 0.0);
      case ModelKind::kPairs: {
        const auto nc = static_cast<std::size_t>(roster_.num_companies());
        const auto row = static_cast<std::size_t>(s.old_company.value) * nc;
        return static_cast<double>(cells_[row + static_cast<std::size_t>(to)] -
                                   (cells_[row + static_cast<std::size_t>(from)] - 1));
      }
      case ModelKind::kDev: {
        const double before = dev_local(from, to);
        auto& sf = dev_sum_[static_cast<std::size_t>(from)];
        auto& st = dev_sum_[static_cast<std::size_t>(to)];
        const auto saved_f = sf;
        const auto saved_t = st;
        sf[0] -= dev_value_[a][0];
        sf[1] -= dev_value_[a][1];
        st[0] += dev_value_[a][0];
        st[1] += dev_value_[a][1];
        const double after = dev_local(from, to);
        sf = saved_f;
        st = saved_t;
        return after - before;
      }
    }
    return 0.0;
  }

  double initial_objective() const {
    if (variant_.kind == ModelKind::kDev) return dev_total();
    return evaluate_objective(roster_, asg_, variant_);
  }

  const Roster& roster_;
  const ModelVariant& variant_;
  Assignment asg_;
  std::vector<Tally> tallies_;
  std::array<double, kNumMerits> merit_scale_{};
  std::vector<char> is_sapr_, is_intl_, allowed_;
  std::vector<std::vector<int>> partners_;
  std::vector<std::array<double, 2>> dev_value_;
  std::vector<std::array<double, 2>> dev_sum_;
  std::vector<int> cells_;
  std::vector<double> company_violation_;
  int conflicts_ = 0;
  int placement_ = 0;
  double objective_ = 0.0;
};

bool better(double v_new, double o_new, double v_old, double o_old) {
  if (v_new < v_old - kImprove) return true;
  return v_new <= v_old + kImprove * 1e-3 && o_new < o_old - kImprove;
}

}  // namespace

Assignment local_search(const Roster& roster, const Assignment& start, const ModelVariant& variant,
                        const LocalSearchOptions& options, LocalSearchStats* stats) {
  require_total(roster, start);
  const int nc = roster.num_companies();
  const std::size_t na = roster.students.size();
  LocalSearchStats local;
  if (options.max_moves <= 0 || nc < 2 || na == 0) {
    if (stats) {
      *stats = local;
      stats->objective = evaluate_objective(roster, start, variant);
    }
    return start;
  }

  SearchState state(roster, start, variant);
  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(na);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> partners(na);
  std::iota(partners.begin(), partners.end(), std::size_t{0});
  std::vector<int> companies(static_cast<std::size_t>(nc));
  std::iota(companies.begin(), companies.end(), 0);

  auto out_of_budget = [&] {
    return local.moves >= options.max_moves ||
           (options.max_evaluations > 0 && local.evaluations >= options.max_evaluations);
  };

  bool improved = true;
  while (improved && !out_of_budget()) {
    improved = false;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t a : order) {
      if (out_of_budget()) break;
      const int from = state.company_of(a);
      bool moved = false;

      std::shuffle(companies.begin(), companies.end(), rng);
      for (int to : companies) {
        if (to == from) continue;
        const double v0 = state.violation();
        const double o0 = state.objective();
        state.move(a, to);
        ++local.evaluations;
        if (better(state.violation(), state.objective(), v0, o0)) {
          moved = true;
          break;
        }
        state.move(a, from);
        state.pin_objective(o0);
        if (out_of_budget()) break;
      }

      if (!moved && !out_of_budget()) {
        std::shuffle(partners.begin(), partners.end(), rng);
        for (std::size_t b : partners) {
          const int to = state.company_of(b);
          if (to == from) continue;
          const double v0 = state.violation();
          const double o0 = state.objective();
          state.move(a, to);
          state.move(b, from);
          ++local.evaluations;
          if (better(state.violation(), state.objective(), v0, o0)) {
            moved = true;
            break;
          }
          state.move(b, to);
          state.move(a, from);
          state.pin_objective(o0);
          if (out_of_budget()) break;
        }
      }
      if (moved) {
        ++local.moves;
        improved = true;
      }
    }
  }

  local.violation = state.violation();
  local.objective = evaluate_objective(roster, state.assignment(), variant);
  if (stats) *stats = local;
  return state.assignment();
}

}  // namespace cohort
