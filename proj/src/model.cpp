#include "onebit/model.hpp"

#include <cmath>
#include <stdexcept>

namespace onebit {

MatrixXd realify_channel(const MatrixXcd& H) {
  const auto r = H.rows(), c = H.cols();
  MatrixXd Hr(2 * r, 2 * c);
  Hr.topLeftCorner(r, c) = H.real();
  Hr.topRightCorner(r, c) = -H.imag();
  Hr.bottomLeftCorner(r, c) = H.imag();
  Hr.bottomRightCorner(r, c) = H.real();
  return Hr;
}

VectorXd realify_vector(const VectorXcd& v) {
  VectorXd out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

VectorXcd complexify_vector(const VectorXd& v) {
  if (v.size() % 2 != 0)
    throw std::invalid_argument("complexify_vector: odd length");
  const auto n = v.size() / 2;
  VectorXcd out(n);
  out.real() = v.head(n);
  out.imag() = v.tail(n);
  return out;
}

VectorXcd apply_channel(const MatrixXcd& H, const VectorXcd& x,
                        const VectorXcd& n) {
  if (H.cols() != x.size() || H.rows() != n.size())
    throw std::invalid_argument("apply_channel: dimension mismatch");
  return H * x + n;
}

static double sgn_pos(double v) { return v < 0.0 ? -1.0 : 1.0; }

VectorXcd quantize_1bit(const VectorXcd& z) {
  VectorXcd y(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i)
    y[i] = cplx(sgn_pos(z[i].real()), sgn_pos(z[i].imag()));
  return y;
}

double min_threshold_distance(const MatrixXcd& H, const VectorXcd& s,
                              const VectorXcd& x) {
  if (H.cols() != x.size() || H.rows() != s.size())
    throw std::invalid_argument("min_threshold_distance: dimension mismatch");
  const VectorXcd r = H * x;
  double eps = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    eps = std::min(eps, s[i].real() * r[i].real());
    eps = std::min(eps, s[i].imag() * r[i].imag());
  }
  return eps;
}

MatrixXcd draw_channel(std::mt19937_64& rng, int K, int L, int M) {
  if (K < 1 || L < 1 || M < 1)
    throw std::invalid_argument("draw_channel: dimensions must be >= 1");
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  MatrixXcd H(K * L, M);
  for (Eigen::Index i = 0; i < H.rows(); ++i)
    for (Eigen::Index j = 0; j < H.cols(); ++j) {
      const double re = g(rng);
      const double im = g(rng);
      H(i, j) = cplx(re, im);
    }
  return H;
}

VectorXcd draw_noise(std::mt19937_64& rng, int len, double sigma_n_sq) {
  if (sigma_n_sq <= 0.0)
    throw std::invalid_argument("draw_noise: sigma_n_sq must be > 0");
  std::normal_distribution<double> g(0.0, std::sqrt(sigma_n_sq / 2.0));
  VectorXcd n(len);
  for (Eigen::Index i = 0; i < len; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    n[i] = cplx(re, im);
  }
  return n;
}

VectorXcd draw_symbols(std::mt19937_64& rng, int KL) {
  std::uniform_int_distribution<int> u(0, 3);
  VectorXcd s(KL);
  for (Eigen::Index i = 0; i < KL; ++i) s[i] = qpsk_symbol(u(rng));
  return s;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t counter) {
  // splitmix64 finalizer over master ^ golden-ratio*counter
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int qpsk_index(cplx sym) {
  const bool re_pos = sym.real() > 0.0;
  const bool im_pos = sym.imag() > 0.0;
  if (re_pos && im_pos) return 0;   // 1+j
  if (!re_pos && im_pos) return 1;  // -1+j
  if (!re_pos) return 2;            // -1-j
  return 3;                         // 1-j
}

cplx qpsk_symbol(int q) {
  static const cplx table[4] = {cplx(1, 1), cplx(-1, 1), cplx(-1, -1),
                                cplx(1, -1)};
  return table[q & 3];
}

}  // namespace onebit
