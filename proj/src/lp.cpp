#include "onebit/lp.hpp"

#include <algorithm>
#include <cmath>

namespace onebit {
namespace {

// Unified constraint list: inequality rows first, then finite box bounds.
// Index m+2j is the lower bound of coordinate j, m+2j+1 the upper bound.
struct ConstraintSet {
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
  std::vector<char> enabled;
  int total() const { return static_cast<int>(h.size()); }
};

ConstraintSet build_constraints(const LinearProgram& p) {
  const int n = static_cast<int>(p.num_vars());
  const int m = static_cast<int>(p.num_rows());
  ConstraintSet cs;
  cs.G = Eigen::MatrixXd::Zero(m + 2 * n, n);
  cs.h = Eigen::VectorXd::Zero(m + 2 * n);
  cs.enabled.assign(m + 2 * n, 0);
  cs.G.topRows(m) = p.A_ineq;
  cs.h.head(m) = p.b_ineq;
  std::fill(cs.enabled.begin(), cs.enabled.begin() + m, 1);
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(p.lower[j])) {
      cs.G(m + 2 * j, j) = 1.0;
      cs.h(m + 2 * j) = p.lower[j];
      cs.enabled[m + 2 * j] = 1;
    }
    if (std::isfinite(p.upper[j])) {
      cs.G(m + 2 * j + 1, j) = -1.0;
      cs.h(m + 2 * j + 1) = -p.upper[j];
      cs.enabled[m + 2 * j + 1] = 1;
    }
  }
  return cs;
}

// Greedily keep a linearly independent subset (in listed order).
std::vector<int> independent_subset(const ConstraintSet& cs,
                                    const std::vector<int>& candidates) {
  const int n = static_cast<int>(cs.G.cols());
  std::vector<int> keep;
  Eigen::MatrixXd B(n, 0);
  for (int idx : candidates) {
    if (static_cast<int>(keep.size()) == n) break;
    Eigen::MatrixXd trial(n, B.cols() + 1);
    trial << B, cs.G.row(idx).transpose();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(trial);
    qr.setThreshold(1e-10);
    if (qr.rank() == trial.cols()) {
      keep.push_back(idx);
      B = trial;
    }
  }
  return keep;
}

struct CoreResult {
  Eigen::VectorXd v;
  std::vector<int> working;
  int iterations = 0;
  bool unbounded = false;
};

// Null-space primal active-set loop. Starts from a feasible v0, maintains a
// working set of active constraints with independent rows, Bland's rule on
// both the dropped multiplier and the blocking constraint.
CoreResult run_active_set(const Eigen::VectorXd& cost, const ConstraintSet& cs,
                          Eigen::VectorXd v, std::vector<int> working,
                          const LpTolerances& tol, int max_iters) {
  const int n = static_cast<int>(cost.size());
  const double dir_tol = 1e-10 * (1.0 + cost.norm());
  const double tie = 1e-12;
  CoreResult out;

  std::vector<char> in_working(cs.total(), 0);
  for (int idx : working) in_working[idx] = 1;

  while (true) {
    if (out.iterations++ > max_iters)
      throw LpIterationLimit("active-set iteration limit exceeded");

    const int k = static_cast<int>(working.size());
    Eigen::VectorXd d;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr;
    Eigen::MatrixXd Wt(n, k);
    for (int i = 0; i < k; ++i) Wt.col(i) = cs.G.row(working[i]).transpose();
    if (k > 0) {
      qr.compute(Wt);
      Eigen::MatrixXd Q = qr.householderQ();
      d = -(cost - Q.leftCols(k) * (Q.leftCols(k).transpose() * cost));
    } else {
      d = -cost;
    }

    if (d.lpNorm<Eigen::Infinity>() <= dir_tol) {
      if (k == 0) break;  // zero (or negligible) cost: current point optimal
      // Multipliers: cost = sum lambda_i g_i over the working set.
      Eigen::VectorXd y = qr.householderQ().transpose() * cost;
      Eigen::VectorXd lambda =
          qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(
              y.head(k));
      int drop_pos = -1;
      for (int i = 0; i < k; ++i) {
        if (lambda[i] < -tol.optimality &&
            (drop_pos == -1 || working[i] < working[drop_pos]))
          drop_pos = i;
      }
      if (drop_pos == -1) break;  // KKT satisfied
      in_working[working[drop_pos]] = 0;
      working.erase(working.begin() + drop_pos);
      continue;
    }

    // Ratio test over inactive constraints.
    double alpha = kInf;
    int block = -1;
    for (int i = 0; i < cs.total(); ++i) {
      if (!cs.enabled[i] || in_working[i]) continue;
      const double gd = cs.G.row(i).dot(d);
      if (gd >= -tol.pivot) continue;
      double slack = cs.G.row(i).dot(v) - cs.h[i];
      if (slack < 0.0) slack = 0.0;
      const double a = slack / (-gd);
      if (block == -1 || a < alpha - tie) {
        alpha = a;
        block = i;
      } else if (a <= alpha + tie && i < block) {
        alpha = std::min(alpha, a);
        block = i;
      }
    }
    if (block == -1) {
      out.unbounded = true;
      out.v = std::move(v);
      out.working = std::move(working);
      return out;
    }
    v += alpha * d;
    working.insert(std::lower_bound(working.begin(), working.end(), block),
                   block);
    in_working[block] = 1;
  }

  out.v = std::move(v);
  out.working = std::move(working);
  return out;
}

// Long active-set runs accumulate rounding drift on the working constraints
// (the step direction lies in their null space only to machine precision).
// A minimum-norm correction back onto G_W v = h_W removes that drift without
// leaving the optimal face; keep it only if it does not worsen feasibility.
Eigen::VectorXd refine_on_working(const ConstraintSet& cs,
                                  const std::vector<int>& working,
                                  const Eigen::VectorXd& v) {
  if (working.empty()) return v;
  const int k = static_cast<int>(working.size());
  const int n = static_cast<int>(v.size());
  Eigen::MatrixXd W(k, n);
  Eigen::VectorXd r(k);
  for (int i = 0; i < k; ++i) {
    W.row(i) = cs.G.row(working[i]);
    r[i] = cs.h[working[i]] - W.row(i).dot(v);
  }
  const Eigen::VectorXd cand =
      v + W.completeOrthogonalDecomposition().solve(r);
  auto max_viol = [&](const Eigen::VectorXd& x) {
    double viol = 0.0;
    for (int i = 0; i < cs.total(); ++i)
      if (cs.enabled[i]) viol = std::max(viol, cs.h[i] - cs.G.row(i).dot(x));
    return viol;
  };
  return max_viol(cand) <= max_viol(v) ? cand : v;
}

Eigen::VectorXd clamp_to_box(const LinearProgram& p, Eigen::VectorXd v) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::isfinite(p.lower[j])) v[j] = std::max(v[j], p.lower[j]);
    if (std::isfinite(p.upper[j])) v[j] = std::min(v[j], p.upper[j]);
  }
  return v;
}

}  // namespace

void LinearProgram::validate() const {
  const auto n = num_vars();
  const auto m = num_rows();
  if (n < 1 || m < 1) throw std::invalid_argument("LP: need n >= 1, m >= 1");
  if (A_ineq.cols() != n || b_ineq.size() != m || lower.size() != n ||
      upper.size() != n)
    throw std::invalid_argument("LP: inconsistent dimensions");
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::isfinite(lower[j]) && std::isfinite(upper[j]) &&
        lower[j] > upper[j])
      throw std::invalid_argument("LP: lower > upper");
}

LpSolution solve_lp(const LinearProgram& p, const WarmHandle* warm,
                    const LpTolerances& tol) {
  p.validate();
  const int n = static_cast<int>(p.num_vars());
  const ConstraintSet cs = build_constraints(p);
  const int max_iters =
      tol.max_iterations > 0 ? tol.max_iterations : 200 * (n + cs.total() + 10);

  Eigen::VectorXd v0 = Eigen::VectorXd::Zero(n);
  if (warm && warm->v.size() == n) v0 = warm->v;
  v0 = clamp_to_box(p, v0);

  double viol = 0.0;
  for (int i = 0; i < cs.total(); ++i)
    if (cs.enabled[i]) viol = std::max(viol, cs.h[i] - cs.G.row(i).dot(v0));

  LpSolution sol;
  std::vector<int> working;

  if (viol > tol.feasibility) {
    // Phase 1: minimize t subject to G v + t >= h, t >= 0.
    LinearProgram aux;
    aux.cost = Eigen::VectorXd::Zero(n + 1);
    aux.cost[n] = 1.0;
    ConstraintSet acs;
    const int t_row = cs.total();
    acs.G = Eigen::MatrixXd::Zero(t_row + 1, n + 1);
    acs.G.topLeftCorner(t_row, n) = cs.G;
    for (int i = 0; i < t_row; ++i) acs.G(i, n) = 1.0;
    acs.G(t_row, n) = 1.0;
    acs.h = Eigen::VectorXd::Zero(t_row + 1);
    acs.h.head(t_row) = cs.h;
    acs.enabled = cs.enabled;
    acs.enabled.push_back(1);

    Eigen::VectorXd va(n + 1);
    va.head(n) = v0;
    va[n] = viol;
    CoreResult aux_res =
        run_active_set(aux.cost, acs, va, {}, tol, max_iters);
    sol.iterations += aux_res.iterations;
    if (aux_res.v[n] > 10.0 * tol.feasibility) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    v0 = clamp_to_box(p, aux_res.v.head(n));
    std::vector<int> candidates;
    for (int idx : aux_res.working)
      if (idx < t_row && std::abs(cs.G.row(idx).dot(v0) - cs.h[idx]) <= 1e-7)
        candidates.push_back(idx);
    working = independent_subset(cs, candidates);
  } else if (warm) {
    std::vector<int> candidates;
    for (int idx : warm->active)
      if (idx >= 0 && idx < cs.total() && cs.enabled[idx] &&
          std::abs(cs.G.row(idx).dot(v0) - cs.h[idx]) <= 1e-7)
        candidates.push_back(idx);
    working = independent_subset(cs, candidates);
  }

  CoreResult res = run_active_set(p.cost, cs, v0, working, tol, max_iters);
  sol.iterations += res.iterations;
  if (res.unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }
  sol.status = LpStatus::optimal;
  res.v = refine_on_working(cs, res.working, res.v);
  sol.v = res.v;
  sol.objective = p.cost.dot(res.v);
  sol.warm.v = res.v;
  sol.warm.active = res.working;
  return sol;
}

}  // namespace onebit
