#include "cohort/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <fmt/format.h>

#include "cohort/error.hpp"

namespace cohort {

GenSpec GenSpec::academy() { return GenSpec{}; }

GenSpec GenSpec::desk(int companies, int size) {
  GenSpec spec;
  spec.num_companies = companies;
  if (companies % 4 == 0) {
    spec.num_battalions = companies / 4;
  } else if (companies % 5 == 0) {
    spec.num_battalions = companies / 5;
  } else if (companies % 2 == 0) {
    spec.num_battalions = companies / 2;
  } else {
    spec.num_battalions = 1;
  }
  spec.sizes.assign(static_cast<std::size_t>(std::max(companies, 0)), size);
  spec.min_size = size;
  spec.max_size = size;
  spec.conflicts = std::min(spec.conflicts, companies * size / 8);
  spec.locked = std::min(spec.locked, companies);
  return spec;
}

GenSpec GenSpec::enrollment(int class_year) {
  GenSpec spec;
  spec.sizes = enrollment_shapes(class_year);
  return spec;
}

std::vector<int> enrollment_shapes(int class_year) {
  switch (class_year) {
    case 2023:
      return {37, 35, 38, 37, 38, 35, 37, 38, 39, 36, 39, 40, 40, 36, 33,
              37, 38, 39, 33, 36, 37, 36, 36, 35, 35, 37, 34, 38, 33, 35};
    case 2024:
      return {39, 35, 37, 38, 39, 42, 36, 39, 38, 40, 40, 39, 40, 38, 40,
              39, 39, 39, 39, 39, 40, 39, 40, 39, 38, 40, 38, 39, 37, 40};
    default:
      throw InputError(fmt::format("no enrollment table for class year {}", class_year));
  }
}

namespace {

using Rng = std::mt19937_64;

double round2(double v) { return std::round(v * 100.0) / 100.0; }

double draw_score(Rng& rng, const ScoreModel& model, double centre) {
  std::normal_distribution<double> noise(0.0, model.student_sd);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double v = centre + (model.student_sd > 0.0 ? noise(rng) : 0.0);
    if (v >= model.lo && v <= model.hi) return round2(v);
  }
  return round2(std::clamp(centre, model.lo, model.hi));
}

// Picks `count` distinct members of `pool` without replacement.
std::vector<int> sample(Rng& rng, std::vector<int> pool, int count) {
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<std::size_t>(std::clamp(count, 0, static_cast<int>(pool.size()))));
  std::sort(pool.begin(), pool.end());
  return pool;
}

void check_spec(const GenSpec& spec, const std::vector<int>& sizes, int total) {
  if (spec.num_companies < 1) throw InputError("generator needs at least one company");
  if (spec.num_battalions < 1 || spec.num_companies % spec.num_battalions != 0) {
    throw InputError(fmt::format("{} companies cannot be split into {} equal battalions",
                                 spec.num_companies, spec.num_battalions));
  }
  if (static_cast<int>(sizes.size()) != spec.num_companies) {
    throw InputError(fmt::format("{} company sizes given for {} companies", sizes.size(),
                                 spec.num_companies));
  }
  for (int n : sizes) {
    if (n < 1) throw InputError("company sizes must be positive");
  }
  if (spec.min_size > spec.max_size || spec.min_size < 1) throw InputError("invalid size range");
  for (const auto& m : spec.scores) {
    if (!(m.lo <= m.hi) || m.company_sd < 0.0 || m.student_sd < 0.0) {
      throw InputError("invalid score model");
    }
  }
  auto fraction = [](double f) { return f >= 0.0 && f <= 1.0; };
  if (!fraction(spec.male_fraction) || !fraction(spec.white_fraction) ||
      !fraction(spec.athlete_fraction) || !fraction(spec.task_force_fraction) ||
      !fraction(spec.prior_service_fraction) || !(spec.fraction_padding >= 0.0)) {
    throw InputError("fractions must lie in [0, 1]");
  }
  if (spec.count_padding < 0 || spec.athlete_padding < 0 || spec.conflicts < 0 || spec.locked < 0) {
    throw InputError("counts and paddings must be non-negative");
  }
  if (!spec.side_constraints) return;
  const int intl_expected = spec.intl_per_company * spec.num_companies;
  const int intl = spec.international < 0 ? intl_expected : spec.international;
  if (spec.intl_per_company < 0 || intl != intl_expected) {
    throw InputError(fmt::format("{} international students cannot fill {} per company across {} companies",
                                 intl, spec.intl_per_company, spec.num_companies));
  }
  if (spec.min_sapr < 0 || spec.sapr_per_company < spec.min_sapr) {
    throw InputError("sapr_per_company must be at least min_sapr");
  }
  for (int n : sizes) {
    if (n < spec.intl_per_company + spec.sapr_per_company) {
      throw InputError("company too small for its international and SAPR students");
    }
  }
  if (spec.conflicts > 0 && spec.num_companies < 2) throw InputError("conflict pairs need two companies");
  if (spec.locked > total) throw InputError("more locked students than students");
}

}  // namespace

Roster generate(const GenSpec& spec, std::uint64_t seed) {
  Rng rng(seed);

  std::vector<int> sizes = spec.sizes;
  if (sizes.empty() && spec.num_companies > 0 && spec.min_size <= spec.max_size) {
    std::uniform_int_distribution<int> pick(spec.min_size, spec.max_size);
    for (int c = 0; c < spec.num_companies; ++c) sizes.push_back(pick(rng));
  }
  const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
  check_spec(spec, sizes, total);

  Roster roster;
  const int nc = spec.num_companies;
  const int per_battalion = nc / spec.num_battalions;
  for (int b = 0; b < spec.num_battalions; ++b) roster.battalions.push_back(fmt::format("B{}", b + 1));
  const int label_width = nc >= 100 ? 3 : 2;
  for (int c = 0; c < nc; ++c) {
    roster.companies.push_back({fmt::format("C{:0{}}", c + 1, label_width), c / per_battalion});
  }
  roster.sports = spec.sports;

  // Company offsets, recentred so the brigade mean stays on target.
  std::array<std::vector<double>, kNumMerits> offset;
  for (int m = 0; m < kNumMerits; ++m) {
    const auto& model = spec.scores[static_cast<std::size_t>(m)];
    std::normal_distribution<double> dist(0.0, model.company_sd);
    auto& off = offset[static_cast<std::size_t>(m)];
    for (int c = 0; c < nc; ++c) off.push_back(model.company_sd > 0.0 ? dist(rng) : 0.0);
    const double mean = std::accumulate(off.begin(), off.end(), 0.0) / nc;
    for (double& v : off) v -= mean;
  }

  std::bernoulli_distribution male(spec.male_fraction);
  std::bernoulli_distribution white(spec.white_fraction);
  std::bernoulli_distribution athlete(spec.athlete_fraction);
  std::uniform_int_distribution<int> sport_pick(0, std::max(0, static_cast<int>(spec.sports.size()) - 1));
  const int id_width = total >= 10000 ? 5 : 4;
  for (int c = 0; c < nc; ++c) {
    for (int k = 0; k < sizes[static_cast<std::size_t>(c)]; ++k) {
      Student s;
      s.id = fmt::format("M{:0{}}", roster.students.size() + 1, id_width);
      for (int m = 0; m < kNumMerits; ++m) {
        const auto& model = spec.scores[static_cast<std::size_t>(m)];
        s.scores[static_cast<std::size_t>(m)] =
            draw_score(rng, model, model.mean + offset[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)]);
      }
      s.gender = male(rng) ? Gender::kMale : Gender::kFemale;
      s.race = white(rng) ? 0 : 1;
      s.old_company = CompanyId{c};
      if (!spec.sports.empty() && athlete(rng)) s.sports.push_back(sport_pick(rng));
      roster.students.push_back(std::move(s));
    }
  }

  std::vector<int> everyone(static_cast<std::size_t>(total));
  std::iota(everyone.begin(), everyone.end(), 0);
  for (int a : sample(rng, everyone, static_cast<int>(std::lround(spec.task_force_fraction * total)))) {
    roster.students[static_cast<std::size_t>(a)].task_force = true;
  }
  for (int a : sample(rng, everyone, static_cast<int>(std::lround(spec.prior_service_fraction * total)))) {
    roster.students[static_cast<std::size_t>(a)].prior_service = true;
  }

  std::vector<std::vector<int>> members(static_cast<std::size_t>(nc));
  for (int a = 0; a < total; ++a) {
    members[static_cast<std::size_t>(roster.students[static_cast<std::size_t>(a)].old_company.value)].push_back(a);
  }

  auto& tol = roster.tolerances;
  if (spec.side_constraints) {
    // International and SAPR students are spread per old company so the old
    // assignment already meets the exact and minimum requirements.
    for (int c = 0; c < nc; ++c) {
      const auto& pool = members[static_cast<std::size_t>(c)];
      auto chosen = sample(rng, pool, spec.intl_per_company + spec.sapr_per_company);
      for (std::size_t k = 0; k < chosen.size(); ++k) {
        auto& s = roster.students[static_cast<std::size_t>(chosen[k])];
        if (k < static_cast<std::size_t>(spec.intl_per_company)) {
          s.international = true;
        } else {
          s.sapr_guide = true;
        }
      }
    }

    std::set<std::pair<int, int>> seen;
    std::uniform_int_distribution<int> any(0, total - 1);
    for (int attempt = 0; static_cast<int>(seen.size()) < spec.conflicts && attempt < 1000 * (spec.conflicts + 1);
         ++attempt) {
      int r = any(rng);
      int q = any(rng);
      if (r == q) continue;
      const auto& sr = roster.students[static_cast<std::size_t>(r)];
      const auto& sq = roster.students[static_cast<std::size_t>(q)];
      if (sr.old_company == sq.old_company) continue;
      if (spec.cross_gender_conflicts && sr.gender == sq.gender) continue;
      if (r > q) std::swap(r, q);
      if (seen.insert({r, q}).second) roster.conflict_pairs.emplace_back(r, q);
    }

    if (per_battalion >= 2) {
      for (int a : sample(rng, everyone, spec.locked)) {
        roster.students[static_cast<std::size_t>(a)].battalion_locked = true;
      }
    }
  } else {
    roster.sapr_companies = std::vector<int>{};
    roster.intl_companies = std::vector<int>{};
  }

  // Tolerances: the old assignment's own spread plus padding.
  std::vector<int> per_quality[kNumQualities];
  std::array<std::vector<double>, kNumMerits> averages;
  std::array<std::vector<double>, kNumGenders> gender_share;
  std::vector<std::vector<double>> race_share(roster.race_classes.size());
  std::vector<int> max_sport(roster.sports.size(), 0);
  for (int c = 0; c < nc; ++c) {
    const auto& pool = members[static_cast<std::size_t>(c)];
    const double n = static_cast<double>(pool.size());
    std::array<int, kNumQualities> q{};
    std::array<double, kNumMerits> sum{};
    std::array<int, kNumGenders> g{};
    std::vector<int> race(roster.race_classes.size(), 0);
    std::vector<int> sport(roster.sports.size(), 0);
    for (int a : pool) {
      const auto& s = roster.students[static_cast<std::size_t>(a)];
      for (int k = 0; k < kNumQualities; ++k) q[static_cast<std::size_t>(k)] += s.in_group(static_cast<Quality>(k)) ? 1 : 0;
      for (int m = 0; m < kNumMerits; ++m) sum[static_cast<std::size_t>(m)] += s.scores[static_cast<std::size_t>(m)];
      ++g[static_cast<std::size_t>(s.gender)];
      ++race[static_cast<std::size_t>(s.race)];
      for (int v : s.sports) ++sport[static_cast<std::size_t>(v)];
    }
    for (int k = 0; k < kNumQualities; ++k) per_quality[k].push_back(q[static_cast<std::size_t>(k)]);
    for (int m = 0; m < kNumMerits; ++m) averages[static_cast<std::size_t>(m)].push_back(sum[static_cast<std::size_t>(m)] / n);
    for (int k = 0; k < kNumGenders; ++k) gender_share[static_cast<std::size_t>(k)].push_back(g[static_cast<std::size_t>(k)] / n);
    for (std::size_t e = 0; e < race.size(); ++e) race_share[e].push_back(race[e] / n);
    for (std::size_t v = 0; v < sport.size(); ++v) max_sport[v] = std::max(max_sport[v], sport[v]);
  }

  if (spec.side_constraints) {
    auto span_of = [](const auto& values) {
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      return std::pair{*lo, *hi};
    };
    for (int k = 0; k < kNumQualities; ++k) {
      const auto [lo, hi] = span_of(per_quality[k]);
      tol.count[static_cast<std::size_t>(k)] = {std::max(0, lo - spec.count_padding), hi + spec.count_padding};
    }
    for (int m = 0; m < kNumMerits; ++m) {
      const auto [lo, hi] = span_of(averages[static_cast<std::size_t>(m)]);
      const double pad = spec.merit_padding[static_cast<std::size_t>(m)];
      tol.avg_score[static_cast<std::size_t>(m)] = {std::floor(lo - pad), std::ceil(hi + pad)};
    }
    auto widen = [&](const std::vector<double>& values) {
      const auto [lo, hi] = span_of(values);
      return Range{std::max(0.0, round2(lo - spec.fraction_padding - 0.005)),
                   std::min(1.0, round2(hi + spec.fraction_padding + 0.005))};
    };
    for (int k = 0; k < kNumGenders; ++k) tol.gender_fraction[static_cast<std::size_t>(k)] = widen(gender_share[static_cast<std::size_t>(k)]);
    for (const auto& share : race_share) tol.race_fraction.push_back(widen(share));
    for (int m : max_sport) tol.max_athletes.push_back(m + spec.athlete_padding);
    tol.min_sapr = spec.min_sapr;
    tol.num_intl = spec.intl_per_company;
  } else {
    tol.count[static_cast<std::size_t>(Quality::kAll)] = {0, total};
    tol.count[static_cast<std::size_t>(Quality::kTaskForce)] = {0, total};
    tol.count[static_cast<std::size_t>(Quality::kPriorService)] = {0, total};
    for (int m = 0; m < kNumMerits; ++m) {
      const auto& model = spec.scores[static_cast<std::size_t>(m)];
      tol.avg_score[static_cast<std::size_t>(m)] = {std::floor(model.lo), std::ceil(model.hi)};
    }
    tol.gender_fraction = {Range{0.0, 1.0}, Range{0.0, 1.0}};
    tol.race_fraction.assign(roster.race_classes.size(), Range{0.0, 1.0});
    tol.max_athletes.assign(roster.sports.size(), total);
    tol.min_sapr = 0;
    tol.num_intl = 0;
  }
  return roster;
}

}  // namespace cohort
