#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onebit/precoders.hpp"

// Monte Carlo uncoded BER, exact sum-rate of the quantized channel, SNR
// bookkeeping, and branch-and-bound complexity profiling.

namespace onebit {

// sigma_n^2 = ||x||^2 / 10^(snr_db/10).
double snr_to_sigma(double snr_db, double x_energy);

struct BerRecord {
  std::string precoder;
  double snr_db = 0.0;
  long trials = 0;
  long bit_errors = 0;
  double ber = 0.0;
};

// Per trial: fresh channel and symbol vector, one precoder solve shared by
// all SNR points, independent noise per point. Deterministic given the seed;
// trials use counter-split RNG streams.
std::vector<BerRecord> simulate_ber(const PrecoderFn& precoder,
                                    const std::string& precoder_id, int K,
                                    int L, int M,
                                    const std::vector<double>& snr_db,
                                    long trials, std::uint64_t seed);

// Convention for the erfc argument's noise scale in the sum-rate expression.
enum class ErfcConvention {
  complex_sigma,       // divide margins by the complex noise std sigma_n
  per_real_dimension,  // divide by sigma_n / sqrt(2)
};

// Mutual information of user k's discrete memoryless channel, one entry per
// user. Enumerates all 4^(KL) symbol vectors through the lookup table.
std::vector<double> sum_rate_per_user(
    const MatrixXcd& H, const LookupTable& table, int K, int L,
    double sigma_n_sq,
    ErfcConvention conv = ErfcConvention::complex_sigma);

double sum_rate_total(const MatrixXcd& H, const LookupTable& table, int K,
                      int L, double sigma_n_sq,
                      ErfcConvention conv = ErfcConvention::complex_sigma);

// Conditional output distribution P(y_k | s_k) over the 4^L outputs of user
// k; exposed so tests can assert normalization directly.
std::vector<double> conditional_output_distribution(
    const MatrixXcd& H, const LookupTable& table, int K, int L, int user,
    const std::vector<int>& sk_digits, double sigma_n_sq,
    ErfcConvention conv = ErfcConvention::complex_sigma);

struct ComplexityRecord {
  int M = 0;
  long instances = 0;
  double mean_visited_branches = 0.0;
  double mean_lp_iterations = 0.0;
};

struct ComplexityProfile {
  std::vector<ComplexityRecord> points;
  double loglog_slope = 0.0;  // of log(mean visited) vs log(2M)
};

ComplexityProfile complexity_profile(int K, int L, const std::vector<int>& Ms,
                                     long instances_per_m, std::uint64_t seed,
                                     const BnbOptions& opts = {});

}  // namespace onebit
