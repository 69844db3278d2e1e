#include "onebit/precoders.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace onebit {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// diag(s_r) * H_r, the 2KL margin rows.
MatrixXd margin_rows(const MatrixXcd& H, const VectorXcd& s) {
  return realify_vector(s).asDiagonal() * realify_channel(H);
}

double min_margin_real(const MatrixXd& Ar, const VectorXd& xr) {
  return (Ar * xr).minCoeff();
}

bool lex_less(const VectorXd& a, const VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - 1e-15) return true;
    if (a[i] > b[i] + 1e-15) return false;
  }
  return false;
}

// Parent node solved the subproblem with prefix length d; the child fixes the
// parent's first free coordinate. Shift the warm handle accordingly: drop that
// coordinate from the point and remap box-constraint indices down by one slot.
WarmHandle child_warm(const WarmHandle& parent, int num_rows) {
  WarmHandle w;
  if (parent.v.size() < 2) return w;
  w.v = parent.v.tail(parent.v.size() - 1);
  for (int idx : parent.active) {
    if (idx < num_rows) {
      w.active.push_back(idx);
    } else {
      const int j = (idx - num_rows) / 2;
      if (j >= 1) w.active.push_back(idx - 2);
    }
  }
  return w;
}

}  // namespace

LinearProgram build_margin_program(const MatrixXcd& H, const VectorXcd& s,
                                   const VectorXd& fixed_prefix) {
  if (H.rows() != s.size())
    throw std::invalid_argument("build_margin_program: H/s mismatch");
  const int two_m = 2 * static_cast<int>(H.cols());
  const int d = static_cast<int>(fixed_prefix.size());
  if (d < 0 || d > two_m)
    throw std::invalid_argument("build_margin_program: bad prefix length");
  const int rows = 2 * static_cast<int>(H.rows());
  const int n_free = two_m - d;
  const double box = 1.0 / std::sqrt(static_cast<double>(two_m));

  const MatrixXd Ar = margin_rows(H, s);
  LinearProgram p;
  p.cost = VectorXd::Zero(n_free + 1);
  p.cost[n_free] = -1.0;
  p.A_ineq.resize(rows, n_free + 1);
  p.A_ineq.leftCols(n_free) = Ar.rightCols(n_free);
  p.A_ineq.col(n_free) = VectorXd::Constant(rows, -1.0);
  p.b_ineq = d > 0 ? VectorXd(-Ar.leftCols(d) * fixed_prefix)
                   : VectorXd(VectorXd::Zero(rows));
  p.lower = VectorXd::Constant(n_free + 1, -box);
  p.upper = VectorXd::Constant(n_free + 1, box);
  p.lower[n_free] = -kInf;
  p.upper[n_free] = kInf;
  return p;
}

RelaxResult relax_precode(const MatrixXcd& H, const VectorXcd& s) {
  const int two_m = 2 * static_cast<int>(H.cols());
  RelaxResult r;
  r.sol = solve_lp(build_margin_program(H, s, VectorXd()));
  if (r.sol.status != LpStatus::optimal)
    throw std::runtime_error("relax_precode: LP solve failed");
  r.x_real = r.sol.v.head(two_m);
  r.epsilon = r.sol.v[two_m];
  return r;
}

VectorXd round_to_alphabet(const VectorXd& x_real, int M) {
  const double c = 1.0 / std::sqrt(2.0 * M);
  VectorXd out(x_real.size());
  for (Eigen::Index i = 0; i < x_real.size(); ++i)
    out[i] = x_real[i] < 0.0 ? -c : c;
  return out;
}

PrecodeResult approx_1bit_precode(const MatrixXcd& H, const VectorXcd& s) {
  const auto t0 = Clock::now();
  const int M = static_cast<int>(H.cols());
  RelaxResult rel = relax_precode(H, s);
  const VectorXd xr = round_to_alphabet(rel.x_real, M);
  PrecodeResult res;
  res.x = complexify_vector(xr);
  res.epsilon = min_threshold_distance(H, s, res.x);
  res.stats.lp_iterations_total = rel.sol.iterations;
  res.stats.wall_seconds = elapsed(t0);
  return res;
}

PrecodeResult bnb_precode(const MatrixXcd& H, const VectorXcd& s,
                          const BnbOptions& opts) {
  const auto t0 = Clock::now();
  const int M = static_cast<int>(H.cols());
  if (M > opts.max_M)
    throw std::invalid_argument("bnb_precode: M exceeds configured cap");
  const int two_m = 2 * M;
  const double c = 1.0 / std::sqrt(static_cast<double>(two_m));
  const MatrixXd Ar = margin_rows(H, s);
  const int num_rows = static_cast<int>(Ar.rows());
  const double keep_tol = 1e-9;

  SolveStats stats;
  stats.visited_per_level.assign(two_m + 1, 0);

  // Incumbent from the relaxation + rounding; its warm handle seeds level 1.
  RelaxResult rel = relax_precode(H, s);
  stats.lp_iterations_total += rel.sol.iterations;
  double f_best = -min_margin_real(Ar, round_to_alphabet(rel.x_real, M));

  struct Node {
    VectorXd prefix;
    WarmHandle warm;
    double lb = 0.0;
  };
  std::vector<Node> level;
  for (double sign : {+1.0, -1.0}) {
    Node n;
    n.prefix = VectorXd::Constant(1, sign * c);
    n.warm = child_warm(rel.sol.warm, num_rows);
    level.push_back(std::move(n));
  }

  for (int d = 1; d <= two_m - 1; ++d) {
    for (Node& node : level) {
      ++stats.visited_per_level[d];
      const LinearProgram sub = build_margin_program(H, s, node.prefix);
      LpSolution sol =
          solve_lp(sub, opts.warm_start ? &node.warm : nullptr);
      if (sol.status != LpStatus::optimal)
        throw std::runtime_error("bnb_precode: node LP failed at level " +
                                 std::to_string(d));
      stats.lp_iterations_total += sol.iterations;
      const int n_free = two_m - d;
      node.lb = sol.objective;  // = -epsilon of the subproblem
      node.warm = sol.warm;

      // Node upper bound: complete the prefix with the rounded free part and
      // evaluate the full margin.
      VectorXd full(two_m);
      full.head(d) = node.prefix;
      full.tail(n_free) = round_to_alphabet(sol.v.head(n_free), M);
      const double ub = -min_margin_real(Ar, full);
      f_best = std::min(f_best, ub);
      stats.upper_bound_trace.push_back(f_best);
    }

    std::vector<Node> next;
    for (Node& node : level) {
      if (opts.prune && node.lb > f_best + keep_tol) continue;
      for (double sign : {+1.0, -1.0}) {
        Node child;
        child.prefix.resize(node.prefix.size() + 1);
        child.prefix.head(node.prefix.size()) = node.prefix;
        child.prefix[node.prefix.size()] = sign * c;
        child.warm = child_warm(node.warm, num_rows);
        child.lb = node.lb;
        next.push_back(std::move(child));
      }
    }
    if (static_cast<long>(next.size()) > opts.survivor_cap)
      throw std::runtime_error("bnb_precode: survivor cap exceeded");
    level = std::move(next);
  }

  // Final level: every survivor is a complete vector; pick the best margin.
  double best_eps = -kInf;
  VectorXd best_x;
  for (const Node& node : level) {
    ++stats.visited_per_level[two_m];
    const double eps = min_margin_real(Ar, node.prefix);
    if (eps > best_eps + 1e-12 ||
        (eps > best_eps - 1e-12 &&
         (best_x.size() == 0 || lex_less(node.prefix, best_x)))) {
      best_eps = eps;
      best_x = node.prefix;
    }
  }
  if (best_x.size() == 0)
    throw std::runtime_error("bnb_precode: empty final level");

  for (long v : stats.visited_per_level) stats.visited_total += v;
  PrecodeResult res;
  res.x = complexify_vector(best_x);
  res.epsilon = best_eps;
  res.stats = std::move(stats);
  res.stats.wall_seconds = elapsed(t0);
  return res;
}

PrecodeResult exhaustive_precode(const MatrixXcd& H, const VectorXcd& s) {
  const auto t0 = Clock::now();
  const int M = static_cast<int>(H.cols());
  if (M > 12)
    throw std::invalid_argument("exhaustive_precode: M exceeds cap of 12");
  const int two_m = 2 * M;
  const double c = 1.0 / std::sqrt(static_cast<double>(two_m));
  const MatrixXd Ar = margin_rows(H, s);

  double best_eps = -kInf;
  VectorXd best_x;
  VectorXd xr(two_m);
  const long count = 1L << two_m;  // 4^M
  for (long code = 0; code < count; ++code) {
    for (int b = 0; b < two_m; ++b)
      xr[b] = (code >> b) & 1 ? -c : c;
    const double eps = min_margin_real(Ar, xr);
    if (eps > best_eps + 1e-12 ||
        (eps > best_eps - 1e-12 &&
         (best_x.size() == 0 || lex_less(xr, best_x)))) {
      best_eps = eps;
      best_x = xr;
    }
  }

  PrecodeResult res;
  res.x = complexify_vector(best_x);
  res.epsilon = best_eps;
  res.stats.visited_total = count;
  res.stats.wall_seconds = elapsed(t0);
  return res;
}

PrecodeResult pop_precode(const MatrixXcd& H, const VectorXcd& s, int n_gon,
                          double* prescale_epsilon) {
  const auto t0 = Clock::now();
  if (n_gon < 8) throw std::invalid_argument("pop_precode: n_gon must be >= 8");
  const int M = static_cast<int>(H.cols());
  const int two_m = 2 * M;
  const int rows = 2 * static_cast<int>(H.rows());
  const double radius = 1.0 / std::sqrt(static_cast<double>(M));
  const double apothem = radius * std::cos(M_PI / n_gon);
  const MatrixXd Ar = margin_rows(H, s);

  // Variables (x_r, eps). Margin rows plus per-antenna polygon half-planes
  // with vertex angles 2*pi*k/n so that doubling n_gon nests the feasible set.
  LinearProgram p;
  p.cost = VectorXd::Zero(two_m + 1);
  p.cost[two_m] = -1.0;
  p.A_ineq.resize(rows + M * n_gon, two_m + 1);
  p.A_ineq.setZero();
  p.A_ineq.topLeftCorner(rows, two_m) = Ar;
  p.A_ineq.col(two_m).head(rows) = VectorXd::Constant(rows, -1.0);
  p.b_ineq = VectorXd::Zero(rows + M * n_gon);
  for (int m = 0; m < M; ++m) {
    for (int t = 0; t < n_gon; ++t) {
      const int r = rows + m * n_gon + t;
      const double theta = (2.0 * t + 1.0) * M_PI / n_gon;
      p.A_ineq(r, m) = -std::cos(theta);
      p.A_ineq(r, M + m) = -std::sin(theta);
      p.b_ineq[r] = -apothem;
    }
  }
  p.lower = VectorXd::Constant(two_m + 1, -kInf);
  p.upper = VectorXd::Constant(two_m + 1, kInf);

  LpSolution sol = solve_lp(p);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error("pop_precode: LP solve failed");
  if (prescale_epsilon) *prescale_epsilon = sol.v[two_m];

  VectorXcd x = complexify_vector(VectorXd(sol.v.head(two_m)));
  for (Eigen::Index m = 0; m < x.size(); ++m) {
    const double mag = std::abs(x[m]);
    x[m] = mag > 1e-14 ? cplx(x[m] * (radius / mag)) : cplx(radius, 0.0);
  }

  PrecodeResult res;
  res.x = x;
  res.epsilon = min_threshold_distance(H, s, x);
  res.stats.lp_iterations_total = sol.iterations;
  res.stats.wall_seconds = elapsed(t0);
  return res;
}

VectorXcd zf_linear(const MatrixXcd& H, const VectorXcd& s) {
  if (H.cols() < H.rows())
    throw std::invalid_argument("zf_linear: requires M >= KL");
  const MatrixXcd gram = H * H.adjoint();
  Eigen::FullPivLU<MatrixXcd> lu(gram);
  if (!lu.isInvertible())
    throw std::invalid_argument("zf_linear: rank-deficient channel");
  return H.adjoint() * lu.solve(s);
}

PrecodeResult zf_quantized_precode(const MatrixXcd& H, const VectorXcd& s) {
  const auto t0 = Clock::now();
  const int M = static_cast<int>(H.cols());
  const VectorXcd xzf = zf_linear(H, s);
  const VectorXd xr = round_to_alphabet(realify_vector(xzf), M);
  PrecodeResult res;
  res.x = complexify_vector(xr);
  res.epsilon = min_threshold_distance(H, s, res.x);
  res.stats.wall_seconds = elapsed(t0);
  return res;
}

VectorXcd LookupTable::lookup(const VectorXcd& s) const {
  const int q0 = qpsk_index(s[0]);
  const cplx rot = std::pow(cplx(0.0, 1.0), q0);
  const VectorXcd s_rep = s / rot;
  return rot * entries[rep_index(s_rep)];
}

int LookupTable::rep_index(const VectorXcd& s_rep) {
  int idx = 0;
  for (Eigen::Index i = s_rep.size() - 1; i >= 1; --i)
    idx = 4 * idx + qpsk_index(s_rep[i]);
  return idx;
}

VectorXcd LookupTable::rep_symbols(int index, int KL) {
  VectorXcd s(KL);
  s[0] = qpsk_symbol(0);
  for (int i = 1; i < KL; ++i) {
    s[i] = qpsk_symbol(index & 3);
    index >>= 2;
  }
  return s;
}

LookupTable build_lookup_table(const MatrixXcd& H, const PrecoderFn& precoder) {
  const int KL = static_cast<int>(H.rows());
  if (KL > 8) throw std::invalid_argument("build_lookup_table: KL exceeds 8");
  LookupTable t;
  t.KL = KL;
  t.M = static_cast<int>(H.cols());
  const int count = 1 << (2 * (KL - 1));  // 4^{KL-1}
  t.entries.reserve(count);
  for (int i = 0; i < count; ++i)
    t.entries.push_back(precoder(H, LookupTable::rep_symbols(i, KL)).x);
  return t;
}

}  // namespace onebit
