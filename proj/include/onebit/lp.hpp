#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

// Dense LP solver for problems of the form
//
//   minimize    cost' v
//   subject to  A_ineq v >= b_ineq
//               lower <= v <= upper   (coordinatewise, +-inf allowed)
//
// solved with a primal active-set method (null-space form, Bland tie-breaking)
// so that branch-and-bound node solves can be warm-started from a parent's
// active set.

namespace onebit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LinearProgram {
  Eigen::VectorXd cost;    // n
  Eigen::MatrixXd A_ineq;  // m x n
  Eigen::VectorXd b_ineq;  // m
  Eigen::VectorXd lower;   // n, -inf where unbounded
  Eigen::VectorXd upper;   // n, +inf where unbounded

  Eigen::Index num_vars() const { return cost.size(); }
  Eigen::Index num_rows() const { return A_ineq.rows(); }
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

// Restart token: final point plus active constraint indices in the unified
// numbering (0..m-1 the inequality rows, then m+2j / m+2j+1 the lower / upper
// bound of coordinate j). Valid for re-solves of programs differing only in
// b_ineq, box values, or fixed-variable pattern.
struct WarmHandle {
  Eigen::VectorXd v;
  std::vector<int> active;
};

struct LpSolution {
  Eigen::VectorXd v;
  double objective = 0.0;
  LpStatus status = LpStatus::optimal;
  int iterations = 0;
  WarmHandle warm;
};

struct LpIterationLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LpTolerances {
  double feasibility = 1e-9;
  double optimality = 1e-7;   // multiplier negativity threshold
  double pivot = 1e-11;       // directional-derivative threshold in ratio test
  int max_iterations = 0;     // 0 -> automatic from problem size
};

LpSolution solve_lp(const LinearProgram& p,
                    const WarmHandle* warm = nullptr,
                    const LpTolerances& tol = {});

}  // namespace onebit
