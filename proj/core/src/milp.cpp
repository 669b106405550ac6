#include "cohort/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <queue>
#include <thread>

#include "cohort/bounds.hpp"
#include "cohort/error.hpp"

namespace cohort {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kProvenOptimal: return "proven_optimal";
    case SolveStatus::kFeasibleGap: return "feasible_gap";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kTimeLimitNoSolution: return "time_limit_no_solution";
    case SolveStatus::kNumericFailure: return "numeric_failure";
  }
  return "?";
}

std::optional<SolveStatus> parse_solve_status(std::string_view text) {
  for (auto s : {SolveStatus::kProvenOptimal, SolveStatus::kFeasibleGap, SolveStatus::kInfeasible,
                 SolveStatus::kTimeLimitNoSolution, SolveStatus::kNumericFailure}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

Assignment decode_assignment(const IpModel& model, std::span<const double> primal) {
  const auto& layout = model.x_layout();
  if (!layout) throw DecodeError("model has no assignment block");
  if (primal.size() < static_cast<std::size_t>(model.num_cols())) {
    throw DecodeError("primal vector shorter than the model");
  }
  std::vector<CompanyId> targets(static_cast<std::size_t>(layout->num_students));
  for (int a = 0; a < layout->num_students; ++a) {
    int chosen = -1;
    for (int c = 0; c < layout->num_companies; ++c) {
      const double v = primal[static_cast<std::size_t>(layout->col(a, c))];
      if (v >= 1.0 - kIntegralityTolerance) {
        if (chosen >= 0) throw DecodeError("student " + std::to_string(a) + " assigned twice");
        chosen = c;
      }
    }
    if (chosen < 0) throw DecodeError("student " + std::to_string(a) + " has no company");
    targets[static_cast<std::size_t>(a)] = CompanyId{chosen};
  }
  return Assignment(std::move(targets));
}

namespace {

using Clock = std::chrono::steady_clock;

struct BoundChange {
  int col = 0;
  double lower = 0.0;
  double upper = 0.0;
};

struct Node {
  double bound = -kInfinity;
  int depth = 0;
  long seq = 0;
  std::vector<BoundChange> changes;
  std::shared_ptr<const BasisSnapshot> basis;
};

// Lowest bound first, then deepest, then oldest.
struct NodeAfter {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  }
};

class Search {
 public:
  Search(const IpModel& model, const SolveOptions& options)
      : model_(model), options_(options), integral_(model.has_integral_objective()) {
    start_ = Clock::now();
    if (std::isfinite(options.time_limit_s)) {
      deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(std::max(0.0, options.time_limit_s)));
    }
    const auto obj = model.objective();
    for (int j = 0; j < model.num_cols(); ++j) {
      const auto& v = model.variable(j);
      if (v.type == VarType::kBinary) binaries_.push_back(j);
      const double c = obj[static_cast<std::size_t>(j)];
      if (c != 0.0) trivial_bound_ += c * (c > 0.0 ? v.lower : v.upper);
    }
    // Infinite column bounds make the sum -inf or nan; either means no bound.
    if (!(trivial_bound_ > -kInfinity)) trivial_bound_ = -kInfinity;
  }

  SolveResult run() {
    const int workers = std::max(1, options_.workers);
    active_bounds_.assign(static_cast<std::size_t>(workers), kInfinity);

    if (options_.warm_start) offer(*options_.warm_start);
    if (has_incumbent_ && prunable(global_bound_locked(), incumbent_obj_)) {
      proven_ = true;
      return finish(workers);
    }

    {
      std::lock_guard lock(mutex_);
      pool_.push(Node{trivial_bound_, 0, seq_++, {}, nullptr});
      started_ = true;
    }
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) threads.emplace_back([this, w] { work(w); });
      for (auto& t : threads) t.join();
    }
    return finish(workers);
  }

 private:
  double tolerance(double incumbent) const {
    return std::max(options_.gap_abs, options_.gap_rel * std::abs(incumbent));
  }

  double effective(double lp_value) const {
    return integral_ ? std::ceil(lp_value - 1e-6) : lp_value;
  }

  bool prunable(double bound, double incumbent) const {
    return std::isfinite(incumbent) && bound >= incumbent - tolerance(incumbent);
  }

  double cutoff(double incumbent) const {
    if (!std::isfinite(incumbent)) return kInfinity;
    const double target = incumbent - tolerance(incumbent);
    return integral_ ? std::ceil(target) - 1.0 + 1e-6 : target;
  }

  double incumbent_value() {
    std::lock_guard lock(mutex_);
    return has_incumbent_ ? incumbent_obj_ : kInfinity;
  }

  // Accepts a candidate if it is feasible and strictly better.
  bool offer(std::vector<double> candidate) {
    if (options_.polish) options_.polish(candidate);
    if (candidate.size() != static_cast<std::size_t>(model_.num_cols())) return false;
    if (!model_.is_feasible(candidate, kFeasibilityTol, kIntegralityTolerance)) return false;
    const double value = model_.objective_value(candidate);
    std::lock_guard lock(mutex_);
    if (has_incumbent_ && value >= incumbent_obj_) return false;
    has_incumbent_ = true;
    incumbent_obj_ = value;
    incumbent_ = std::move(candidate);
    check_gap_locked();
    return true;
  }

  double global_bound_locked() const {
    if (!started_) return std::max(trivial_bound_, options_.external_lb.value_or(-kInfinity));
    double bound = pool_.empty() ? kInfinity : pool_.top().bound;
    for (double b : active_bounds_) bound = std::min(bound, b);
    if (options_.external_lb) bound = std::max(bound, *options_.external_lb);
    return bound;
  }

  void check_gap_locked() {
    if (has_incumbent_ && prunable(global_bound_locked(), incumbent_obj_)) {
      proven_ = true;
      stop_ = true;
      cv_.notify_all();
    }
  }

  bool over_limits_locked() {
    if (deadline_ && Clock::now() >= *deadline_) limit_hit_ = true;
    if (options_.node_limit > 0 && nodes_ >= options_.node_limit) limit_hit_ = true;
    if (limit_hit_) {
      stop_ = true;
      cv_.notify_all();
    }
    return limit_hit_;
  }

  void work(int id) {
    LpOptions lp_options = options_.lp;
    lp_options.deadline = deadline_;
    LpSolver lp(model_, lp_options);
    std::vector<int> modified;
    for (;;) {
      Node node;
      {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return stop_ || !pool_.empty() || busy_ == 0; });
        if (stop_ || pool_.empty()) {
          cv_.notify_all();
          return;
        }
        node = pool_.top();
        pool_.pop();
        ++busy_;
        active_bounds_[static_cast<std::size_t>(id)] = node.bound;
      }
      plunge(lp, modified, std::move(node), id);
      std::lock_guard lock(mutex_);
      --busy_;
      active_bounds_[static_cast<std::size_t>(id)] = kInfinity;
      check_gap_locked();
      cv_.notify_all();
    }
  }

  void apply(LpSolver& lp, std::vector<int>& modified, const Node& node) {
    for (int col : modified) {
      const auto& v = model_.variable(col);
      lp.set_column_bounds(col, v.lower, v.upper);
    }
    modified.clear();
    for (const auto& ch : node.changes) {
      lp.set_column_bounds(ch.col, ch.lower, ch.upper);
      modified.push_back(ch.col);
    }
    if (node.basis) lp.load_basis(*node.basis);
  }

  int fractional_binary(std::span<const double> x) const {
    int best = -1;
    double best_frac = kIntegralityTolerance;
    for (int j : binaries_) {
      const double v = x[static_cast<std::size_t>(j)];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac + 1e-12) {
        best_frac = frac;
        best = j;
      }
    }
    return best;
  }

  int first_unfixed_binary(const LpSolver& lp) const {
    for (int j : binaries_) {
      if (lp.column_lower(j) != lp.column_upper(j)) return j;
    }
    return -1;
  }

  void push(Node node) {
    std::lock_guard lock(mutex_);
    node.seq = seq_++;
    pool_.push(std::move(node));
    cv_.notify_one();
  }

  void plunge(LpSolver& lp, std::vector<int>& modified, Node node, int id) {
    for (;;) {
      double incumbent = kInfinity;
      {
        std::lock_guard lock(mutex_);
        if (stop_ || over_limits_locked()) {
          if (!proven_) pool_.push(std::move(node));
          return;
        }
        incumbent = has_incumbent_ ? incumbent_obj_ : kInfinity;
        active_bounds_[static_cast<std::size_t>(id)] = node.bound;
        ++nodes_;
      }
      if (prunable(node.bound, incumbent)) return;

      apply(lp, modified, node);
      const long before = lp.iterations();
      LpStatus status = lp.solve(cutoff(incumbent));
      if (status == LpStatus::kNumericFailure || status == LpStatus::kUnbounded) {
        lp.reset_to_slack_basis();
        status = lp.solve(cutoff(incumbent));
      }
      {
        std::lock_guard lock(mutex_);
        lp_iterations_ += lp.iterations() - before;
      }

      double bound = node.bound;
      int branch_col = -1;
      std::vector<double> x;
      if (status == LpStatus::kInfeasible || status == LpStatus::kCutoff) return;
      if (status == LpStatus::kIterationLimit && deadline_ && Clock::now() >= *deadline_) {
        // The deadline passed mid-solve; keep the node for the final bound.
        std::lock_guard lock(mutex_);
        over_limits_locked();
        pool_.push(std::move(node));
        return;
      }
      if (status == LpStatus::kOptimal) {
        x = lp.primal();
        bound = std::max(bound, effective(lp.objective()));
        bool run_heuristic = node.depth == 0;
        {
          std::lock_guard lock(mutex_);
          if (node.depth == 0) root_bound_ = lp.objective();
          // Also rerun on node relaxations: often while nothing is known, rarely after.
          run_heuristic = run_heuristic || nodes_ % (has_incumbent_ ? 512 : 32) == 0;
        }
        if (run_heuristic && options_.root_heuristic) {
          if (auto candidate = options_.root_heuristic(x)) offer(std::move(*candidate));
          incumbent = incumbent_value();
        }
        if (prunable(bound, incumbent)) return;
        branch_col = fractional_binary(x);
        if (branch_col < 0) {
          if (!offer(x)) {
            std::lock_guard lock(mutex_);
            ++rejected_;
          }
          return;
        }
      } else {
        // No trustworthy relaxation: split without tightening the bound.
        {
          std::lock_guard lock(mutex_);
          numeric_trouble_ = true;
        }
        branch_col = first_unfixed_binary(lp);
        if (branch_col < 0) return;
      }

      auto basis = status == LpStatus::kOptimal ? std::make_shared<const BasisSnapshot>(lp.basis())
                                                : nullptr;
      Node down{bound, node.depth + 1, 0, node.changes, basis};
      down.changes.push_back({branch_col, 0.0, 0.0});
      push(std::move(down));
      node.bound = bound;
      node.depth += 1;
      node.changes.push_back({branch_col, 1.0, 1.0});
      node.basis = std::move(basis);
    }
  }

  SolveResult finish(int workers) {
    SolveResult result;
    result.stats.workers = workers;
    result.stats.nodes = nodes_;
    result.stats.lp_iterations = lp_iterations_;
    result.stats.root_lp_bound = root_bound_;
    const bool exhausted = !limit_hit_ && pool_.empty();
    if (has_incumbent_) {
      result.primal = incumbent_;
      result.objective = incumbent_obj_;
      double bound = (proven_ || exhausted) ? incumbent_obj_ : global_bound_locked();
      if (options_.external_lb) {
        bound = std::max(bound, std::min(*options_.external_lb, incumbent_obj_));
      }
      if (!proven_ && !exhausted && integral_) bound = std::ceil(bound - 1e-6);
      result.best_bound = std::min(bound, incumbent_obj_);
      result.status = (proven_ || exhausted) ? SolveStatus::kProvenOptimal : SolveStatus::kFeasibleGap;
      result.gap = optimality_gap(result.objective, result.best_bound);
      if (model_.x_layout()) result.assignment = decode_assignment(model_, result.primal);
    } else if (exhausted) {
      result.status = (numeric_trouble_ || rejected_ > 0) ? SolveStatus::kNumericFailure
                                                          : SolveStatus::kInfeasible;
      result.best_bound = kInfinity;
    } else {
      result.status = SolveStatus::kTimeLimitNoSolution;
      result.best_bound = global_bound_locked();
    }
    result.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return result;
  }

  static constexpr double kFeasibilityTol = 1e-6;

  const IpModel& model_;
  SolveOptions options_;
  const bool integral_;
  std::vector<int> binaries_;
  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;

  std::mutex mutex_;
  std::condition_variable cv_;
  std::priority_queue<Node, std::vector<Node>, NodeAfter> pool_;
  std::vector<double> active_bounds_;
  int busy_ = 0;
  long seq_ = 0;
  long nodes_ = 0;
  long lp_iterations_ = 0;
  long rejected_ = 0;
  bool started_ = false;
  bool stop_ = false;
  bool proven_ = false;
  bool limit_hit_ = false;
  bool numeric_trouble_ = false;
  bool has_incumbent_ = false;
  double incumbent_obj_ = kInfinity;
  // Objective bound implied by the column bounds alone.
  double trivial_bound_ = 0.0;
  std::vector<double> incumbent_;
  std::optional<double> root_bound_;
};

}  // namespace

SolveResult solve_ip(const IpModel& model, const SolveOptions& options) {
  if (model.num_cols() == 0) throw InputError("model has no variables");
  Search search(model, options);
  return search.run();
}

}  // namespace cohort
