#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

// Domain types and the complex<->real reformulation used by all precoders.
//
// Conventions:
//  - Channel H is (K*L) x M complex, entries unit variance per complex entry.
//  - Transmit symbols are QPSK: {1+j, 1-j, -1+j, -1-j}.
//  - One-bit transmit entries live in P(M) = {e^{j(2q+1)pi/4}/sqrt(M)}.
//  - Real expansion stacks Re over Im; H_r = [Re H, -Im H; Im H, Re H].

namespace onebit {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

// [Re H, -Im H; Im H, Re H], shape 2KL x 2M.
MatrixXd realify_channel(const MatrixXcd& H);

// Re stacked over Im, length doubles.
VectorXd realify_vector(const VectorXcd& v);

// Inverse of realify_vector; length must be even.
VectorXcd complexify_vector(const VectorXd& v);

// z = H*x + n. Throws std::invalid_argument on dimension mismatch.
VectorXcd apply_channel(const MatrixXcd& H, const VectorXcd& x,
                        const VectorXcd& n);

// Per-entry sgn(Re) + j*sgn(Im); sgn(0) = +1.
VectorXcd quantize_1bit(const VectorXcd& z);

// min over the 2KL rows of diag(s_r) * H_r * x_r. Positive value implies
// noise-free correct detection of every bit.
double min_threshold_distance(const MatrixXcd& H, const VectorXcd& s,
                              const VectorXcd& x);

// i.i.d. CN(0,1) channel, shape (K*L) x M.
MatrixXcd draw_channel(std::mt19937_64& rng, int K, int L, int M);

// i.i.d. CN(0, sigma_n_sq) noise vector.
VectorXcd draw_noise(std::mt19937_64& rng, int len, double sigma_n_sq);

// Uniform QPSK symbol vector of length KL.
VectorXcd draw_symbols(std::mt19937_64& rng, int KL);

// Counter-based seed split: stream k of a master seed. Parallel and serial
// runs over the same streams produce identical draws.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t counter);

// QPSK index q with sym == j^q * (1+j), q in {0,1,2,3}.
int qpsk_index(cplx sym);

// j^q * (1+j).
cplx qpsk_symbol(int q);

}  // namespace onebit
