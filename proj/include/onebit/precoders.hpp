#pragma once

#include <functional>
#include <string>
#include <vector>

#include "onebit/lp.hpp"
#include "onebit/model.hpp"

// Precoding algorithms: phase-only (continuous), LP-relaxation approximate
// 1-bit, exact breadth-first branch-and-bound 1-bit, exhaustive search,
// quantized zero-forcing, and the rotation-symmetry lookup table.

namespace onebit {

struct SolveStats {
  std::vector<long> visited_per_level;  // B&B nodes per tree level
  long visited_total = 0;
  long lp_iterations_total = 0;
  double wall_seconds = 0.0;
  std::vector<double> upper_bound_trace;  // best f after each bounded node
};

struct PrecodeResult {
  VectorXcd x;
  double epsilon = 0.0;
  SolveStats stats;
};

using PrecoderFn =
    std::function<PrecodeResult(const MatrixXcd&, const VectorXcd&)>;

// Margin-maximization LP for a fixed discrete prefix of the real-expanded
// transmit vector. Variables are the 2M-d free coordinates followed by the
// margin; cost selects -margin; the free coordinates are boxed by
// 1/sqrt(2M). An empty prefix reproduces the plain relaxation.
LinearProgram build_margin_program(const MatrixXcd& H, const VectorXcd& s,
                                   const VectorXd& fixed_prefix);

struct RelaxResult {
  VectorXd x_real;  // 2M, inside the box
  double epsilon = 0.0;
  LpSolution sol;
};

RelaxResult relax_precode(const MatrixXcd& H, const VectorXcd& s);

// Coordinatewise nearest point of {+-1/sqrt(2M)}^{2M}.
VectorXd round_to_alphabet(const VectorXd& x_real, int M);

PrecodeResult approx_1bit_precode(const MatrixXcd& H, const VectorXcd& s);

struct BnbOptions {
  int max_M = 16;
  long survivor_cap = 1L << 22;
  bool prune = true;
  bool warm_start = true;
};

// Exact solution of the discrete margin-maximization problem by breadth-first
// branch-and-bound over the real-expanded coordinates.
PrecodeResult bnb_precode(const MatrixXcd& H, const VectorXcd& s,
                          const BnbOptions& opts = {});

// Full enumeration over the 4^M one-bit vectors. Ties broken toward the
// lexicographically smallest real-expanded vector.
PrecodeResult exhaustive_precode(const MatrixXcd& H, const VectorXcd& s);

// Phase-only precoder: per-antenna disc constraints approximated by an
// inscribed regular n-gon, entries rescaled to magnitude 1/sqrt(M) afterwards.
// prescale_epsilon, when given, receives the LP margin before rescaling.
PrecodeResult pop_precode(const MatrixXcd& H, const VectorXcd& s,
                          int n_gon = 64, double* prescale_epsilon = nullptr);

// Unquantized zero-forcing solution H^H (H H^H)^{-1} s.
VectorXcd zf_linear(const MatrixXcd& H, const VectorXcd& s);

// Zero-forcing followed by per-entry quantization onto P(M).
PrecodeResult zf_quantized_precode(const MatrixXcd& H, const VectorXcd& s);

// Precoding vectors for one representative per rotation class of the symbol
// vectors (first entry pinned to 1+j); arbitrary s served by co-rotation.
struct LookupTable {
  int KL = 0;
  int M = 0;
  std::vector<VectorXcd> entries;  // 4^{KL-1}

  VectorXcd lookup(const VectorXcd& s) const;

  static int rep_index(const VectorXcd& s_rep);
  static VectorXcd rep_symbols(int index, int KL);
};

LookupTable build_lookup_table(const MatrixXcd& H, const PrecoderFn& precoder);

}  // namespace onebit
