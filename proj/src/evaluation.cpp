#include "onebit/evaluation.hpp"

#include <cmath>
#include <stdexcept>

namespace onebit {
namespace {

double erfc_scale(double sigma_n_sq, ErfcConvention conv) {
  const double sigma = std::sqrt(sigma_n_sq);
  return conv == ErfcConvention::complex_sigma ? sigma
                                                : sigma / std::sqrt(2.0);
}

// Digits -> symbol vector over the full KL entries.
VectorXcd symbols_from_digits(const std::vector<int>& digits) {
  VectorXcd s(digits.size());
  for (size_t i = 0; i < digits.size(); ++i) s[i] = qpsk_symbol(digits[i]);
  return s;
}

}  // namespace

double snr_to_sigma(double snr_db, double x_energy) {
  return x_energy / std::pow(10.0, snr_db / 10.0);
}

std::vector<BerRecord> simulate_ber(const PrecoderFn& precoder,
                                    const std::string& precoder_id, int K,
                                    int L, int M,
                                    const std::vector<double>& snr_db,
                                    long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("simulate_ber: trials >= 1");
  const int KL = K * L;
  std::vector<long> errors(snr_db.size(), 0);

  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(split_seed(seed, static_cast<std::uint64_t>(t)));
    const MatrixXcd H = draw_channel(rng, K, L, M);
    const VectorXcd s = draw_symbols(rng, KL);
    const PrecodeResult pr = precoder(H, s);
    const double energy = pr.x.squaredNorm();
    const VectorXcd r = H * pr.x;
    for (size_t i = 0; i < snr_db.size(); ++i) {
      const double sigma_sq = snr_to_sigma(snr_db[i], energy);
      const VectorXcd z = r + draw_noise(rng, KL, sigma_sq);
      const VectorXcd y = quantize_1bit(z);
      for (int j = 0; j < KL; ++j) {
        if (y[j].real() * s[j].real() < 0.0) ++errors[i];
        if (y[j].imag() * s[j].imag() < 0.0) ++errors[i];
      }
    }
  }

  std::vector<BerRecord> out;
  for (size_t i = 0; i < snr_db.size(); ++i) {
    BerRecord rec;
    rec.precoder = precoder_id;
    rec.snr_db = snr_db[i];
    rec.trials = trials;
    rec.bit_errors = errors[i];
    rec.ber = static_cast<double>(errors[i]) / (2.0 * KL * trials);
    out.push_back(rec);
  }
  return out;
}

std::vector<double> conditional_output_distribution(
    const MatrixXcd& H, const LookupTable& table, int K, int L, int user,
    const std::vector<int>& sk_digits, double sigma_n_sq,
    ErfcConvention conv) {
  const int KL = K * L;
  if (static_cast<int>(sk_digits.size()) != L)
    throw std::invalid_argument("conditional_output_distribution: bad s_k");
  const int others = KL - L;
  const long other_count = 1L << (2 * others);  // 4^(KL-L)
  const int y_count = 1 << (2 * L);             // 4^L outputs
  const double scale = erfc_scale(sigma_n_sq, conv);
  const MatrixXd Hr = realify_channel(H);

  std::vector<double> p(y_count, 0.0);
  std::vector<int> digits(KL, 0);
  for (long oc = 0; oc < other_count; ++oc) {
    long rest = oc;
    int pos = 0;
    for (int i = 0; i < KL; ++i) {
      if (i >= user * L && i < (user + 1) * L) {
        digits[i] = sk_digits[i - user * L];
      } else {
        digits[i] = static_cast<int>(rest & 3);
        rest >>= 2;
        ++pos;
      }
    }
    const VectorXcd s = symbols_from_digits(digits);
    const VectorXd xr = realify_vector(table.lookup(s));
    // User k's 2L real margins: real rows then imaginary rows.
    VectorXd m(2 * L);
    for (int l = 0; l < L; ++l) {
      m[l] = Hr.row(user * L + l).dot(xr);
      m[L + l] = Hr.row(KL + user * L + l).dot(xr);
    }
    for (int y = 0; y < y_count; ++y) {
      double prob = 1.0;
      for (int i = 0; i < 2 * L; ++i) {
        const double yi = (y >> i) & 1 ? -1.0 : 1.0;
        prob *= 0.5 * std::erfc(-yi * m[i] / scale);
      }
      p[y] += prob;
    }
  }
  for (double& v : p) v /= static_cast<double>(other_count);
  return p;
}

std::vector<double> sum_rate_per_user(const MatrixXcd& H,
                                      const LookupTable& table, int K, int L,
                                      double sigma_n_sq, ErfcConvention conv) {
  const int sk_count = 1 << (2 * L);  // 4^L
  const int y_count = sk_count;
  const double p_s = 1.0 / sk_count;

  std::vector<double> rates;
  for (int user = 0; user < K; ++user) {
    // P(y | s_k) for every s_k, then P(y) by total probability.
    std::vector<std::vector<double>> cond(sk_count);
    for (int sk = 0; sk < sk_count; ++sk) {
      std::vector<int> digits(L);
      int rest = sk;
      for (int l = 0; l < L; ++l) {
        digits[l] = rest & 3;
        rest >>= 2;
      }
      cond[sk] = conditional_output_distribution(H, table, K, L, user, digits,
                                                 sigma_n_sq, conv);
    }
    std::vector<double> p_y(y_count, 0.0);
    for (int sk = 0; sk < sk_count; ++sk)
      for (int y = 0; y < y_count; ++y) p_y[y] += p_s * cond[sk][y];

    double I = 0.0;
    for (int sk = 0; sk < sk_count; ++sk)
      for (int y = 0; y < y_count; ++y) {
        const double pys = cond[sk][y];
        if (pys <= 0.0 || p_y[y] <= 0.0) continue;
        I += p_s * pys * std::log2(pys / p_y[y]);
      }
    rates.push_back(I);
  }
  return rates;
}

double sum_rate_total(const MatrixXcd& H, const LookupTable& table, int K,
                      int L, double sigma_n_sq, ErfcConvention conv) {
  double total = 0.0;
  for (double r : sum_rate_per_user(H, table, K, L, sigma_n_sq, conv))
    total += r;
  return total;
}

ComplexityProfile complexity_profile(int K, int L, const std::vector<int>& Ms,
                                     long instances_per_m, std::uint64_t seed,
                                     const BnbOptions& opts) {
  if (instances_per_m < 10)
    throw std::invalid_argument("complexity_profile: need >= 10 instances");
  ComplexityProfile prof;
  for (size_t mi = 0; mi < Ms.size(); ++mi) {
    const int M = Ms[mi];
    double visited = 0.0;
    double lp_iters = 0.0;
    for (long inst = 0; inst < instances_per_m; ++inst) {
      std::mt19937_64 rng(
          split_seed(seed, (static_cast<std::uint64_t>(mi) << 32) | inst));
      const MatrixXcd H = draw_channel(rng, K, L, M);
      const VectorXcd s = draw_symbols(rng, K * L);
      const PrecodeResult res = bnb_precode(H, s, opts);
      visited += static_cast<double>(res.stats.visited_total);
      lp_iters += static_cast<double>(res.stats.lp_iterations_total);
    }
    ComplexityRecord rec;
    rec.M = M;
    rec.instances = instances_per_m;
    rec.mean_visited_branches = visited / instances_per_m;
    rec.mean_lp_iterations = lp_iters / instances_per_m;
    prof.points.push_back(rec);
  }

  // Least-squares slope of log(mean visited) vs log(2M).
  const size_t n = prof.points.size();
  if (n >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& rec : prof.points) {
      const double x = std::log(2.0 * rec.M);
      const double y = std::log(rec.mean_visited_branches);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    prof.loglog_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return prof;
}

}  // namespace onebit
