#include "cohort/pipeline.hpp"

#include <algorithm>

#include "cohort/bounds.hpp"
#include "cohort/error.hpp"
#include "cohort/heuristics.hpp"

namespace cohort {

std::string_view to_string(WarmStart mode) {
  switch (mode) {
    case WarmStart::kNone: return "none";
    case WarmStart::kDeal: return "deal";
    case WarmStart::kDealLocalSearch: return "deal+ls";
  }
  return "?";
}

std::optional<WarmStart> parse_warm_start(std::string_view text) {
  for (auto m : {WarmStart::kNone, WarmStart::kDeal, WarmStart::kDealLocalSearch}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::optional<std::vector<double>> build_warm_start(const CompiledModel& model, const Roster& roster,
                                                    WarmStart mode, std::uint64_t seed, long ls_moves,
                                                    long ls_evaluations) {
  if (mode == WarmStart::kNone || roster.num_companies() < 2) return std::nullopt;
  Assignment asg = cyclic_deal(roster);
  if (mode == WarmStart::kDealLocalSearch) {
    asg = local_search(roster, asg, model.variant, {ls_moves, ls_evaluations, seed});
  }
  return complete_solution(model, roster, asg);
}

SolveResult solve_roster(const Roster& roster, const ModelVariant& variant,
                         const RosterSolveOptions& options) {
  const CompiledModel model = compile(roster, variant);
  SolveOptions opts = options.solver;

  if (options.pairs_bound && variant.kind == ModelKind::kPairs) {
    const double bound = static_cast<double>(pairs_lower_bound(roster).total);
    opts.external_lb = std::max(opts.external_lb.value_or(bound), bound);
  }
  opts.warm_start = build_warm_start(model, roster, options.warm_start, opts.seed, options.ls_moves,
                                     options.ls_evaluations);

  opts.polish = [&model, &roster](std::vector<double>& candidate) {
    try {
      candidate = complete_solution(model, roster, decode_assignment(model.ip, candidate));
    } catch (const DecodeError&) {
      // Left as is; the feasibility screen rejects it.
    }
  };
  if (options.root_heuristic) {
    const std::uint64_t seed = opts.seed;
    const long moves = options.ls_moves;
    const long evals = options.ls_evaluations;
    opts.root_heuristic = [&model, &roster, seed, moves,
                           evals](std::span<const double> x) -> std::optional<std::vector<double>> {
      Assignment asg = round_assignment(roster, model.x, x, model.variant.no_stay());
      asg = local_search(roster, asg, model.variant, {moves, evals, seed + 1});
      return complete_solution(model, roster, asg);
    };
  }
  return solve_ip(model.ip, opts);
}

}  // namespace cohort
