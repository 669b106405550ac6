#include "cohort/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace cohort {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
    case LpStatus::kCutoff: return "cutoff";
    case LpStatus::kNumericFailure: return "numeric_failure";
  }
  return "?";
}

namespace {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

// Result of one phase. kNeedDual asks the driver to restore primal
// feasibility before continuing.
enum class Phase : std::uint8_t { kDone, kInfeasible, kUnbounded, kCutoff, kLimit, kNumeric, kNeedDual };

struct Eta {
  int p = 0;
  double pivot = 1.0;
  std::vector<int> idx;
  std::vector<double> val;
};

}  // namespace

struct LpSolver::Impl {
  Impl(const IpModel& model, LpOptions opts) : options(opts) {
    n = model.num_cols();
    m = model.num_rows();
    total = n + m;

    // Row-major copy straight from the model, column-major by transposition.
    row_start.assign(static_cast<std::size_t>(m) + 1, 0);
    std::vector<int> col_count(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < m; ++i) {
      const auto cols = model.row_cols(i);
      const auto coefs = model.row_coefs(i);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (coefs[k] == 0.0) continue;
        row_col.push_back(cols[k]);
        row_val.push_back(coefs[k]);
        ++col_count[static_cast<std::size_t>(cols[k])];
      }
      row_start[static_cast<std::size_t>(i) + 1] = static_cast<int>(row_col.size());
    }
    col_start.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 0; j < n; ++j) col_start[static_cast<std::size_t>(j) + 1] = col_start[static_cast<std::size_t>(j)] + col_count[static_cast<std::size_t>(j)];
    col_row.resize(row_col.size());
    col_val.resize(row_col.size());
    std::vector<int> fill(col_start.begin(), col_start.end() - 1);
    for (int i = 0; i < m; ++i) {
      for (int k = row_start[static_cast<std::size_t>(i)]; k < row_start[static_cast<std::size_t>(i) + 1]; ++k) {
        const int j = row_col[static_cast<std::size_t>(k)];
        const int slot = fill[static_cast<std::size_t>(j)]++;
        col_row[static_cast<std::size_t>(slot)] = i;
        col_val[static_cast<std::size_t>(slot)] = row_val[static_cast<std::size_t>(k)];
      }
    }

    cost.assign(static_cast<std::size_t>(total), 0.0);
    lo.assign(static_cast<std::size_t>(total), 0.0);
    hi.assign(static_cast<std::size_t>(total), 0.0);
    const auto obj = model.objective();
    for (int j = 0; j < n; ++j) {
      const auto& v = model.variable(j);
      cost[static_cast<std::size_t>(j)] = obj[static_cast<std::size_t>(j)];
      lo[static_cast<std::size_t>(j)] = v.lower;
      hi[static_cast<std::size_t>(j)] = v.upper;
    }
    for (int i = 0; i < m; ++i) {
      const auto r = static_cast<std::size_t>(n + i);
      const double rhs = model.row_rhs(i);
      switch (model.row_sense(i)) {
        case RowSense::kLe: lo[r] = -kInfinity; hi[r] = rhs; break;
        case RowSense::kGe: lo[r] = rhs; hi[r] = kInfinity; break;
        case RowSense::kEq: lo[r] = rhs; hi[r] = rhs; break;
      }
    }
    model_lo = lo;
    model_hi = hi;
    true_cost = cost;

    // Columns with a finite bound get a deterministic cost shift pointing
    // away from their starting bound, which breaks the dual degeneracy of
    // sparse objectives.
    shift.assign(static_cast<std::size_t>(total), 0.0);
    std::uint64_t state = 0x9E3779B97F4A7C15ULL;
    for (int j = 0; j < n; ++j) {
      state += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      z ^= z >> 31;
      const auto u = static_cast<std::size_t>(j);
      const bool has_lo = std::isfinite(lo[u]);
      const bool has_hi = std::isfinite(hi[u]);
      if (!has_lo && !has_hi) continue;
      const double r = static_cast<double>(z >> 11) * 0x1.0p-53;
      const double mag = options.cost_perturbation * (1.0 + std::abs(cost[u])) * (1.0 + r);
      shift[u] = (has_lo && has_hi ? cost[u] < 0.0 : !has_lo) ? -mag : mag;
    }

    x.assign(static_cast<std::size_t>(total), 0.0);
    d.assign(static_cast<std::size_t>(total), 0.0);
    y = Vector::Zero(m);
    head.assign(static_cast<std::size_t>(m), 0);
    pos.assign(static_cast<std::size_t>(total), -1);
    alpha_row.assign(static_cast<std::size_t>(total), 0.0);
    iteration_limit = options.iteration_limit > 0 ? options.iteration_limit
                                                  : 100L * (n + m) + 10000L;
    slack_basis();
  }

  // ---- basis bookkeeping -------------------------------------------------

  double nonbasic_start(int j) const {
    const auto u = static_cast<std::size_t>(j);
    const bool has_lo = std::isfinite(lo[u]);
    const bool has_hi = std::isfinite(hi[u]);
    if (has_lo && has_hi) return cost[u] < 0.0 ? hi[u] : lo[u];
    if (has_lo) return lo[u];
    if (has_hi) return hi[u];
    return 0.0;
  }

  void slack_basis() {
    dse.assign(static_cast<std::size_t>(m), 1.0);
    std::fill(pos.begin(), pos.end(), -1);
    for (int k = 0; k < m; ++k) {
      head[static_cast<std::size_t>(k)] = n + k;
      pos[static_cast<std::size_t>(n + k)] = k;
    }
    for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = nonbasic_start(j);
    needs_refresh = true;
  }

  bool is_basic(int j) const { return pos[static_cast<std::size_t>(j)] >= 0; }

  // ---- linear algebra ----------------------------------------------------

  template <class F>
  void for_column(int j, F&& f) const {
    if (j < n) {
      for (int k = col_start[static_cast<std::size_t>(j)]; k < col_start[static_cast<std::size_t>(j) + 1]; ++k) {
        f(col_row[static_cast<std::size_t>(k)], col_val[static_cast<std::size_t>(k)]);
      }
    } else {
      f(j - n, -1.0);
    }
  }

  bool refactor() {
    std::vector<Eigen::Triplet<double, int>> trip;
    trip.reserve(static_cast<std::size_t>(m) * 2);
    for (int k = 0; k < m; ++k) {
      for_column(head[static_cast<std::size_t>(k)], [&](int r, double v) { trip.emplace_back(r, k, v); });
    }
    SparseMatrix basis(m, m);
    basis.setFromTriplets(trip.begin(), trip.end());
    basis.makeCompressed();
    lu.analyzePattern(basis);
    lu.factorize(basis);
    etas.clear();
    pivots_since_refactor = 0;
    factor_ok = lu.info() == Eigen::Success;
    return factor_ok;
  }

  void ftran(Vector& v) const {
    if (m == 0) return;
    v = lu.solve(v).eval();
    for (const auto& e : etas) {
      const double vp = v[e.p] / e.pivot;
      v[e.p] = vp;
      if (vp == 0.0) continue;
      for (std::size_t k = 0; k < e.idx.size(); ++k) v[e.idx[k]] -= e.val[k] * vp;
    }
  }

  void btran(Vector& v) const {
    if (m == 0) return;
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double s = v[it->p];
      for (std::size_t k = 0; k < it->idx.size(); ++k) s -= it->val[k] * v[it->idx[k]];
      v[it->p] = s / it->pivot;
    }
    v = lu.transpose().solve(v).eval();
  }

  void push_eta(int p, const Vector& col) {
    Eta e;
    e.p = p;
    e.pivot = col[p];
    for (int i = 0; i < m; ++i) {
      if (i != p && col[i] != 0.0) {
        e.idx.push_back(i);
        e.val.push_back(col[i]);
      }
    }
    etas.push_back(std::move(e));
  }

  void compute_primal() {
    Vector rhs = Vector::Zero(m);
    for (int j = 0; j < total; ++j) {
      if (is_basic(j)) continue;
      const double xj = x[static_cast<std::size_t>(j)];
      if (xj == 0.0) continue;
      for_column(j, [&](int r, double v) { rhs[r] -= v * xj; });
    }
    ftran(rhs);
    for (int k = 0; k < m; ++k) x[static_cast<std::size_t>(head[static_cast<std::size_t>(k)])] = rhs[k];
  }

  void compute_duals() {
    Vector cb(m);
    for (int k = 0; k < m; ++k) cb[k] = cost[static_cast<std::size_t>(head[static_cast<std::size_t>(k)])];
    btran(cb);
    y = cb;
    for (int j = 0; j < total; ++j) {
      if (is_basic(j)) {
        d[static_cast<std::size_t>(j)] = 0.0;
        continue;
      }
      double dj = cost[static_cast<std::size_t>(j)];
      for_column(j, [&](int r, double v) { dj -= y[r] * v; });
      d[static_cast<std::size_t>(j)] = dj;
    }
  }

  // Zeroes a wrong-signed reduced cost by shifting the working cost. The
  // driver restores the true costs before declaring optimality.
  void shift_cost(std::size_t u) {
    cost[u] -= d[u];
    d[u] = 0.0;
    perturbed = true;
  }

  // Sign violation of a nonbasic reduced cost; positive means infeasible.
  double dual_violation(std::size_t u) const {
    const bool at_lo = x[u] == lo[u];
    const bool at_hi = x[u] == hi[u];
    if (at_lo && !at_hi) return -d[u];
    if (at_hi && !at_lo) return d[u];
    if (!at_lo && !at_hi) return std::abs(d[u]);
    return 0.0;
  }

  // Moves boxed nonbasic variables to the bound matching their reduced cost;
  // with `shift` the rest are removed by cost shifting. Returns the number of
  // dual infeasibilities left.
  int make_dual_feasible(bool shift = false) {
    int remaining = 0;
    bool flipped = false;
    const double tol = options.dual_tol;
    for (int j = 0; j < total; ++j) {
      if (is_basic(j)) continue;
      const auto u = static_cast<std::size_t>(j);
      if (lo[u] == hi[u]) continue;
      const double dj = d[u];
      if (x[u] == lo[u]) {
        if (dj < -tol) {
          if (std::isfinite(hi[u])) {
            x[u] = hi[u];
            flipped = true;
          } else if (shift) {
            shift_cost(u);
          } else {
            ++remaining;
          }
        }
      } else if (x[u] == hi[u]) {
        if (dj > tol) {
          if (std::isfinite(lo[u])) {
            x[u] = lo[u];
            flipped = true;
          } else if (shift) {
            shift_cost(u);
          } else {
            ++remaining;
          }
        }
      } else if (std::abs(dj) > tol) {
        if (shift) {
          shift_cost(u);
        } else {
          ++remaining;
        }
      }
    }
    if (flipped) compute_primal();
    return remaining;
  }

  bool refresh(bool fix_duals) {
    if (!refactor()) return false;
    compute_primal();
    compute_duals();
    dual_infeasibilities = fix_duals ? make_dual_feasible(true) : count_dual_infeasible();
    needs_refresh = false;
    return true;
  }

  int count_dual_infeasible() const {
    int count = 0;
    for (int j = 0; j < total; ++j) {
      if (is_basic(j)) continue;
      const auto u = static_cast<std::size_t>(j);
      if (lo[u] == hi[u]) continue;
      const double dj = d[u];
      const bool can_inc = x[u] < hi[u];
      const bool can_dec = x[u] > lo[u];
      if ((dj < -options.dual_tol && can_inc) || (dj > options.dual_tol && can_dec)) ++count;
    }
    return count;
  }

  double primal_infeasibility(int j) const {
    const auto u = static_cast<std::size_t>(j);
    if (x[u] < lo[u] - options.primal_tol) return lo[u] - x[u];
    if (x[u] > hi[u] + options.primal_tol) return x[u] - hi[u];
    return 0.0;
  }

  double current_objective() const {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += true_cost[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    return s;
  }

  double working_objective() const {
    double s = 0.0;
    for (int j = 0; j < total; ++j) s += cost[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    return s;
  }

  // Lagrangian bound on the true objective for the current row duals: the
  // minimum of the true reduced costs over the variable box. Reduced costs
  // within the dual tolerance count as zero.
  double lagrangian_bound() const {
    double s = 0.0;
    for (int j = 0; j < total; ++j) {
      const auto u = static_cast<std::size_t>(j);
      const double dt = (is_basic(j) ? 0.0 : d[u]) - (cost[u] - true_cost[u]);
      if (std::abs(dt) <= options.dual_tol) continue;
      const double bound = dt > 0.0 ? lo[u] : hi[u];
      if (!std::isfinite(bound)) return -kInfinity;
      s += dt * bound;
    }
    return s;
  }

  void set_perturbed(bool on) {
    perturbed = on;
    for (int j = 0; j < total; ++j) {
      const auto u = static_cast<std::size_t>(j);
      cost[u] = true_cost[u] + (on && lo[u] != hi[u] ? shift[u] : 0.0);
    }
  }

  void note_step(bool degenerate) {
    if (degenerate) {
      if (++degenerate_run > options.stall_threshold) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }

  // ---- dual simplex -------------------------------------------------------

  bool out_of_budget() const {
    if (iterations - solve_start >= iteration_limit) return true;
    return options.deadline && (iterations & 63) == 0 &&
           std::chrono::steady_clock::now() >= *options.deadline;
  }

  Phase dual_phase(double cutoff) {
    bool refreshed_for_infeasible = false;
    int consistency_failures = 0;
    for (;;) {
      if (out_of_budget()) return Phase::kLimit;
      if (pivots_since_refactor >= options.refactor_interval) {
        if (!refresh(true)) return Phase::kNumeric;
      }

      // Dual steepest edge: infeasibility squared over the row norm of B^-1.
      int p = -1;
      int leaving = -1;
      double worst = 0.0;
      for (int k = 0; k < m; ++k) {
        const int j = head[static_cast<std::size_t>(k)];
        const double inf = primal_infeasibility(j);
        if (inf <= 0.0) continue;
        const double score = inf * inf / dse[static_cast<std::size_t>(k)];
        if (score > worst) {
          worst = score;
          leaving = j;
          p = k;
        }
      }
      if (p < 0) return Phase::kDone;

      const double cutoff_tol = 1e-9 * (1.0 + std::abs(cutoff));
      if (std::isfinite(cutoff) && dual_infeasibilities == 0 && working_objective() > cutoff + cutoff_tol) {
        if (!perturbed || lagrangian_bound() > cutoff + cutoff_tol) return Phase::kCutoff;
        // Close to the cutoff: continue on the true costs so the test is exact.
        set_perturbed(false);
        compute_duals();
        dual_infeasibilities = make_dual_feasible();
        continue;
      }

      const auto lp = static_cast<std::size_t>(leaving);
      const bool to_lower = x[lp] < lo[lp];
      const double target = to_lower ? lo[lp] : hi[lp];
      const double delta = x[lp] - target;

      Vector rho = Vector::Zero(m);
      rho[p] = 1.0;
      btran(rho);
      const double row_norm = rho.squaredNorm();
      dse[static_cast<std::size_t>(p)] = row_norm;
      std::fill(alpha_row.begin(), alpha_row.end(), 0.0);
      for (int i = 0; i < m; ++i) {
        const double ri = rho[i];
        if (ri == 0.0) continue;
        for (int k = row_start[static_cast<std::size_t>(i)]; k < row_start[static_cast<std::size_t>(i) + 1]; ++k) {
          alpha_row[static_cast<std::size_t>(row_col[static_cast<std::size_t>(k)])] += ri * row_val[static_cast<std::size_t>(k)];
        }
        alpha_row[static_cast<std::size_t>(n + i)] = -ri;
      }

      // Harris two-pass ratio test over the pivot row.
      auto eligible = [&](int j, double& slack) {
        const auto u = static_cast<std::size_t>(j);
        const double a = alpha_row[u];
        if (std::abs(a) <= options.pivot_tol) return false;
        const bool at_lo = x[u] == lo[u];
        const bool at_hi = x[u] == hi[u];
        // Moving x_j by t changes x_leaving by -a t.
        const bool can_inc = !at_hi;
        const bool can_dec = !at_lo;
        const bool want_inc_leaving = to_lower;
        const bool inc_ok = can_inc && (want_inc_leaving ? a < 0 : a > 0);
        const bool dec_ok = can_dec && (want_inc_leaving ? a > 0 : a < 0);
        if (!inc_ok && !dec_ok) return false;
        if (at_lo && !at_hi) {
          slack = d[u];
        } else if (at_hi && !at_lo) {
          slack = -d[u];
        } else {
          slack = std::abs(d[u]);
        }
        return true;
      };

      double theta_max = kInfinity;
      for (int j = 0; j < total; ++j) {
        if (is_basic(j) || lo[static_cast<std::size_t>(j)] == hi[static_cast<std::size_t>(j)]) continue;
        double slack = 0.0;
        if (!eligible(j, slack)) continue;
        theta_max = std::min(theta_max, (std::max(slack, 0.0) + options.dual_tol) /
                                            std::abs(alpha_row[static_cast<std::size_t>(j)]));
      }
      if (!std::isfinite(theta_max)) {
        if (!refreshed_for_infeasible && pivots_since_refactor > 0) {
          refreshed_for_infeasible = true;
          if (!refresh(true)) return Phase::kNumeric;
          continue;
        }
        return Phase::kInfeasible;
      }
      int q = -1;
      double best_alpha = 0.0;
      for (int j = 0; j < total; ++j) {
        if (is_basic(j) || lo[static_cast<std::size_t>(j)] == hi[static_cast<std::size_t>(j)]) continue;
        double slack = 0.0;
        if (!eligible(j, slack)) continue;
        const double a = std::abs(alpha_row[static_cast<std::size_t>(j)]);
        if (std::max(slack, 0.0) / a > theta_max) continue;
        if (a > best_alpha) {
          best_alpha = a;
          q = j;
        }
      }
      refreshed_for_infeasible = false;

      Vector col = Vector::Zero(m);
      for_column(q, [&](int r, double v) { col[r] = v; });
      ftran(col);
      const double alpha_q = alpha_row[static_cast<std::size_t>(q)];
      if (std::abs(col[p] - alpha_q) > 1e-6 * (1.0 + std::abs(alpha_q)) ||
          std::abs(col[p]) <= options.pivot_tol) {
        if (++consistency_failures > 3) return Phase::kNumeric;
        if (!refresh(true)) return Phase::kNumeric;
        continue;
      }

      const double t = delta / col[p];
      x[static_cast<std::size_t>(q)] += t;
      for (int k = 0; k < m; ++k) {
        if (col[k] != 0.0) x[static_cast<std::size_t>(head[static_cast<std::size_t>(k)])] -= t * col[k];
      }
      x[lp] = target;

      // A reduced cost on the wrong side of zero within the Harris tolerance
      // is treated as zero so the step never loses dual feasibility.
      double entering_slack = 0.0;
      eligible(q, entering_slack);
      const double dq = entering_slack < 0.0 ? 0.0 : d[static_cast<std::size_t>(q)];
      const double theta_d = dq / col[p];
      if (theta_d != 0.0) {
        for (int j = 0; j < total; ++j) {
          if (is_basic(j)) continue;
          const auto u = static_cast<std::size_t>(j);
          const double a = alpha_row[u];
          if (a == 0.0) continue;
          d[u] -= theta_d * a;
          if (lo[u] != hi[u] && dual_violation(u) > 0.0) shift_cost(u);
        }
      }
      d[lp] = -theta_d;
      d[static_cast<std::size_t>(q)] = 0.0;

      Vector tau = rho;
      ftran(tau);
      const double cp = col[p];
      for (int k = 0; k < m; ++k) {
        if (k == p || col[k] == 0.0) continue;
        const double r = col[k] / cp;
        auto& w = dse[static_cast<std::size_t>(k)];
        w = std::max(w - 2.0 * r * tau[k] + r * r * row_norm, 1e-8);
      }
      dse[static_cast<std::size_t>(p)] = std::max(row_norm / (cp * cp), 1e-8);

      head[static_cast<std::size_t>(p)] = q;
      pos[static_cast<std::size_t>(q)] = p;
      pos[lp] = -1;
      push_eta(p, col);
      ++iterations;
      ++pivots_since_refactor;
      consistency_failures = 0;
    }
  }

  // ---- primal simplex -----------------------------------------------------

  Phase primal_phase() {
    for (;;) {
      if (out_of_budget()) return Phase::kLimit;
      if (pivots_since_refactor >= options.refactor_interval) {
        if (!refresh(false)) return Phase::kNumeric;
        for (int k = 0; k < m; ++k) {
          if (primal_infeasibility(head[static_cast<std::size_t>(k)]) > 0.0) return Phase::kNeedDual;
        }
      } else {
        compute_duals();
      }

      int q = -1;
      double best = 0.0;
      double dir = 0.0;
      for (int j = 0; j < total; ++j) {
        if (is_basic(j)) continue;
        const auto u = static_cast<std::size_t>(j);
        if (lo[u] == hi[u]) continue;
        const double dj = d[u];
        double candidate_dir = 0.0;
        if (dj < -options.dual_tol && x[u] < hi[u]) candidate_dir = 1.0;
        if (dj > options.dual_tol && x[u] > lo[u]) candidate_dir = -1.0;
        if (candidate_dir == 0.0) continue;
        if (bland) {
          q = j;
          dir = candidate_dir;
          break;
        }
        if (std::abs(dj) > best) {
          best = std::abs(dj);
          q = j;
          dir = candidate_dir;
        }
      }
      if (q < 0) return Phase::kDone;

      Vector col = Vector::Zero(m);
      for_column(q, [&](int r, double v) { col[r] = v; });
      ftran(col);

      // Basic k moves by -dir * col[k] per unit step of the entering column.
      double theta_max = kInfinity;
      for (int k = 0; k < m; ++k) {
        const double a = dir * col[k];
        if (std::abs(a) <= options.pivot_tol) continue;
        const auto u = static_cast<std::size_t>(head[static_cast<std::size_t>(k)]);
        if (a > 0 && std::isfinite(lo[u])) {
          theta_max = std::min(theta_max, (x[u] - lo[u] + options.primal_tol) / a);
        } else if (a < 0 && std::isfinite(hi[u])) {
          theta_max = std::min(theta_max, (hi[u] - x[u] + options.primal_tol) / -a);
        }
      }
      const auto uq = static_cast<std::size_t>(q);
      const double range = hi[uq] - lo[uq];
      const double room = dir > 0 ? hi[uq] - x[uq] : x[uq] - lo[uq];
      if (!std::isfinite(theta_max) && !std::isfinite(room)) return Phase::kUnbounded;
      (void)range;

      int p = -1;
      double step = kInfinity;
      double best_alpha = 0.0;
      for (int k = 0; k < m; ++k) {
        const double a = dir * col[k];
        if (std::abs(a) <= options.pivot_tol) continue;
        const auto u = static_cast<std::size_t>(head[static_cast<std::size_t>(k)]);
        double ratio = kInfinity;
        if (a > 0 && std::isfinite(lo[u])) {
          ratio = std::max(0.0, (x[u] - lo[u]) / a);
        } else if (a < 0 && std::isfinite(hi[u])) {
          ratio = std::max(0.0, (hi[u] - x[u]) / -a);
        }
        if (ratio > theta_max) continue;
        if (bland) {
          if (p < 0 || head[static_cast<std::size_t>(k)] < head[static_cast<std::size_t>(p)]) {
            p = k;
            step = ratio;
          }
        } else if (std::abs(a) > best_alpha) {
          best_alpha = std::abs(a);
          p = k;
          step = ratio;
        }
      }

      if (p < 0 || room <= step) {
        // Bound flip: the entering column crosses its whole range.
        const double t = room;
        x[uq] = dir > 0 ? hi[uq] : lo[uq];
        for (int k = 0; k < m; ++k) {
          if (col[k] != 0.0) x[static_cast<std::size_t>(head[static_cast<std::size_t>(k)])] -= dir * t * col[k];
        }
        ++iterations;
        note_step(t < 1e-12);
        continue;
      }

      const int leaving = head[static_cast<std::size_t>(p)];
      const auto ul = static_cast<std::size_t>(leaving);
      const bool leaves_at_lower = dir * col[p] > 0;
      x[uq] += dir * step;
      for (int k = 0; k < m; ++k) {
        if (col[k] != 0.0) x[static_cast<std::size_t>(head[static_cast<std::size_t>(k)])] -= dir * step * col[k];
      }
      x[ul] = leaves_at_lower ? lo[ul] : hi[ul];
      dse[static_cast<std::size_t>(p)] = 1.0;

      head[static_cast<std::size_t>(p)] = q;
      pos[uq] = p;
      pos[ul] = -1;
      push_eta(p, col);
      ++iterations;
      ++pivots_since_refactor;
      note_step(step < 1e-12);
    }
  }

  // ---- driver -------------------------------------------------------------

  bool recover() {
    if (++recoveries > options.max_recoveries) return false;
    slack_basis();
    return refresh(true);
  }

  LpStatus run(double cutoff) {
    solve_start = iterations;
    recoveries = 0;
    bland = false;
    degenerate_run = 0;
    set_perturbed(options.cost_perturbation > 0.0);
    if (needs_refresh || !factor_ok) {
      if (!refresh(true) && !recover()) return LpStatus::kNumericFailure;
    } else {
      compute_duals();
      dual_infeasibilities = make_dual_feasible(true);
    }
    for (int round = 0; round < 50; ++round) {
      const Phase dual = dual_phase(cutoff);
      if (perturbed && dual != Phase::kCutoff) {
        set_perturbed(false);
        if (dual == Phase::kDone) {
          compute_duals();
          dual_infeasibilities = count_dual_infeasible();
        }
      }
      switch (dual) {
        case Phase::kDone: break;
        case Phase::kInfeasible: return LpStatus::kInfeasible;
        case Phase::kCutoff: return LpStatus::kCutoff;
        case Phase::kLimit: return LpStatus::kIterationLimit;
        case Phase::kNumeric:
          if (!recover()) return LpStatus::kNumericFailure;
          continue;
        default: break;
      }
      switch (primal_phase()) {
        case Phase::kDone: break;
        case Phase::kUnbounded: return LpStatus::kUnbounded;
        case Phase::kLimit: return LpStatus::kIterationLimit;
        case Phase::kNeedDual:
          if (!refresh(true) && !recover()) return LpStatus::kNumericFailure;
          continue;
        case Phase::kNumeric:
          if (!recover()) return LpStatus::kNumericFailure;
          continue;
        default: break;
      }
      // Confirm optimality on a fresh factorisation.
      if (!refresh(false)) {
        if (!recover()) return LpStatus::kNumericFailure;
        continue;
      }
      bool primal_ok = true;
      for (int k = 0; k < m && primal_ok; ++k) {
        primal_ok = primal_infeasibility(head[static_cast<std::size_t>(k)]) <= 0.0;
      }
      if (primal_ok && dual_infeasibilities == 0) return LpStatus::kOptimal;
      if (!primal_ok) dual_infeasibilities = make_dual_feasible(true);
    }
    return LpStatus::kNumericFailure;
  }

  LpOptions options;
  int n = 0;
  int m = 0;
  int total = 0;
  std::vector<int> col_start, col_row;
  std::vector<double> col_val;
  std::vector<int> row_start, row_col;
  std::vector<double> row_val;
  std::vector<double> cost, true_cost, shift, lo, hi, model_lo, model_hi;
  std::vector<double> dse;  // squared row norms of B^-1
  bool perturbed = false;
  std::vector<double> x, d, alpha_row;
  Vector y;
  std::vector<int> head, pos;
  mutable Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  std::vector<Eta> etas;
  bool factor_ok = false;
  bool needs_refresh = true;
  int pivots_since_refactor = 0;
  int dual_infeasibilities = 0;
  int recoveries = 0;
  int degenerate_run = 0;
  bool bland = false;
  long iterations = 0;
  long iteration_limit = 0;
  long solve_start = 0;
  LpStatus last = LpStatus::kNumericFailure;
};

LpSolver::LpSolver(const IpModel& model, LpOptions options)
    : impl_(std::make_unique<Impl>(model, options)) {}
LpSolver::~LpSolver() = default;
LpSolver::LpSolver(LpSolver&&) noexcept = default;
LpSolver& LpSolver::operator=(LpSolver&&) noexcept = default;

int LpSolver::num_cols() const { return impl_->n; }
int LpSolver::num_rows() const { return impl_->m; }

void LpSolver::set_column_bounds(int col, double lower, double upper) {
  auto& s = *impl_;
  const auto u = static_cast<std::size_t>(col);
  const bool was_upper = !s.is_basic(col) && s.x[u] == s.hi[u] && s.x[u] != s.lo[u];
  s.lo[u] = lower;
  s.hi[u] = upper;
  if (!s.is_basic(col)) {
    double v = was_upper ? upper : lower;
    if (!std::isfinite(v)) v = std::isfinite(lower) ? lower : (std::isfinite(upper) ? upper : 0.0);
    s.x[u] = v;
  }
  s.needs_refresh = true;
}

double LpSolver::column_lower(int col) const { return impl_->lo[static_cast<std::size_t>(col)]; }
double LpSolver::column_upper(int col) const { return impl_->hi[static_cast<std::size_t>(col)]; }

void LpSolver::restore_bounds() {
  auto& s = *impl_;
  for (int j = 0; j < s.n; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (s.lo[u] != s.model_lo[u] || s.hi[u] != s.model_hi[u]) set_column_bounds(j, s.model_lo[u], s.model_hi[u]);
  }
}

LpStatus LpSolver::solve(double cutoff) {
  impl_->last = impl_->run(cutoff);
  return impl_->last;
}

LpStatus LpSolver::status() const { return impl_->last; }
double LpSolver::objective() const { return impl_->current_objective(); }

std::vector<double> LpSolver::primal() const {
  return {impl_->x.begin(), impl_->x.begin() + impl_->n};
}

std::vector<double> LpSolver::row_duals() const {
  return {impl_->y.data(), impl_->y.data() + impl_->m};
}

std::vector<double> LpSolver::reduced_costs() const {
  return {impl_->d.begin(), impl_->d.begin() + impl_->n};
}

long LpSolver::iterations() const { return impl_->iterations; }

LpSolution LpSolver::solution() const {
  LpSolution out;
  out.status = impl_->last;
  out.primal = primal();
  out.row_duals = row_duals();
  out.reduced_costs = reduced_costs();
  out.objective = objective();
  out.iterations = iterations();
  return out;
}

BasisSnapshot LpSolver::basis() const {
  const auto& s = *impl_;
  BasisSnapshot b;
  b.basic = s.head;
  b.state.resize(static_cast<std::size_t>(s.total));
  for (int j = 0; j < s.total; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (s.is_basic(j)) {
      b.state[u] = BasisSnapshot::kBasic;
    } else if (s.x[u] == s.lo[u]) {
      b.state[u] = BasisSnapshot::kAtLower;
    } else if (s.x[u] == s.hi[u]) {
      b.state[u] = BasisSnapshot::kAtUpper;
    } else {
      b.state[u] = BasisSnapshot::kAtZero;
    }
  }
  return b;
}

void LpSolver::load_basis(const BasisSnapshot& b) {
  auto& s = *impl_;
  if (static_cast<int>(b.basic.size()) != s.m || static_cast<int>(b.state.size()) != s.total) {
    s.slack_basis();
    return;
  }
  s.head = b.basic;
  std::fill(s.pos.begin(), s.pos.end(), -1);
  for (int k = 0; k < s.m; ++k) s.pos[static_cast<std::size_t>(s.head[static_cast<std::size_t>(k)])] = k;
  for (int j = 0; j < s.total; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (s.is_basic(j)) continue;
    double v = 0.0;
    switch (b.state[u]) {
      case BasisSnapshot::kAtLower: v = std::isfinite(s.lo[u]) ? s.lo[u] : s.nonbasic_start(j); break;
      case BasisSnapshot::kAtUpper: v = std::isfinite(s.hi[u]) ? s.hi[u] : s.nonbasic_start(j); break;
      default: v = std::clamp(0.0, s.lo[u], s.hi[u]); break;
    }
    s.x[u] = v;
  }
  s.needs_refresh = true;
}

void LpSolver::reset_to_slack_basis() { impl_->slack_basis(); }

LpSolution solve_lp(const IpModel& model, const LpOptions& options) {
  LpSolver solver(model, options);
  solver.solve();
  return solver.solution();
}

}  // namespace cohort
