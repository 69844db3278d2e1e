#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "onebit/evaluation.hpp"
#include "onebit/precoders.hpp"

namespace py = pybind11;
using namespace onebit;

namespace {

PrecoderFn named_precoder(const std::string& name, int n_gon) {
  if (name == "bnb")
    return [](const MatrixXcd& H, const VectorXcd& s) {
      return bnb_precode(H, s);
    };
  if (name == "approx") return approx_1bit_precode;
  if (name == "pop")
    return [n_gon](const MatrixXcd& H, const VectorXcd& s) {
      return pop_precode(H, s, n_gon);
    };
  if (name == "zf") return zf_quantized_precode;
  if (name == "exhaustive") return exhaustive_precode;
  throw std::invalid_argument("unknown precoder: " + name);
}

}  // namespace

PYBIND11_MODULE(onebitprec, m) {
  m.doc() = "1-bit MIMO precoding: branch-and-bound, relaxation, and "
            "evaluation routines";

  py::class_<SolveStats>(m, "SolveStats")
      .def_readonly("visited_per_level", &SolveStats::visited_per_level)
      .def_readonly("visited_total", &SolveStats::visited_total)
      .def_readonly("lp_iterations_total", &SolveStats::lp_iterations_total)
      .def_readonly("wall_seconds", &SolveStats::wall_seconds)
      .def_readonly("upper_bound_trace", &SolveStats::upper_bound_trace);

  py::class_<PrecodeResult>(m, "PrecodeResult")
      .def_readonly("x", &PrecodeResult::x)
      .def_readonly("epsilon", &PrecodeResult::epsilon)
      .def_readonly("stats", &PrecodeResult::stats);

  py::class_<BerRecord>(m, "BerRecord")
      .def_readonly("precoder", &BerRecord::precoder)
      .def_readonly("snr_db", &BerRecord::snr_db)
      .def_readonly("trials", &BerRecord::trials)
      .def_readonly("bit_errors", &BerRecord::bit_errors)
      .def_readonly("ber", &BerRecord::ber);

  py::class_<LookupTable>(m, "LookupTable")
      .def_readonly("KL", &LookupTable::KL)
      .def_readonly("M", &LookupTable::M)
      .def_readonly("entries", &LookupTable::entries)
      .def("lookup", &LookupTable::lookup, py::arg("s"));

  m.def("realify_channel", &realify_channel, py::arg("H"));
  m.def("realify_vector", &realify_vector, py::arg("v"));
  m.def("complexify_vector", &complexify_vector, py::arg("v"));
  m.def("apply_channel", &apply_channel, py::arg("H"), py::arg("x"),
        py::arg("n"));
  m.def("quantize_1bit", &quantize_1bit, py::arg("z"));
  m.def("min_threshold_distance", &min_threshold_distance, py::arg("H"),
        py::arg("s"), py::arg("x"));

  m.def(
      "bnb_precode",
      [](const MatrixXcd& H, const VectorXcd& s) { return bnb_precode(H, s); },
      py::arg("H"), py::arg("s"));
  m.def("approx_1bit_precode", &approx_1bit_precode, py::arg("H"),
        py::arg("s"));
  m.def("exhaustive_precode", &exhaustive_precode, py::arg("H"), py::arg("s"));
  m.def(
      "pop_precode",
      [](const MatrixXcd& H, const VectorXcd& s, int n_gon) {
        return pop_precode(H, s, n_gon);
      },
      py::arg("H"), py::arg("s"), py::arg("n_gon") = 64);
  m.def("zf_quantized_precode", &zf_quantized_precode, py::arg("H"),
        py::arg("s"));
  m.def(
      "relax_precode",
      [](const MatrixXcd& H, const VectorXcd& s) {
        const RelaxResult r = relax_precode(H, s);
        return py::make_tuple(r.x_real, r.epsilon);
      },
      py::arg("H"), py::arg("s"));
  m.def("round_to_alphabet", &round_to_alphabet, py::arg("x_real"),
        py::arg("M"));

  m.def(
      "build_lookup_table",
      [](const MatrixXcd& H, const std::string& precoder, int n_gon) {
        return build_lookup_table(H, named_precoder(precoder, n_gon));
      },
      py::arg("H"), py::arg("precoder") = "bnb", py::arg("n_gon") = 64);

  m.def(
      "simulate_ber",
      [](const std::string& precoder, int K, int L, int M,
         const std::vector<double>& snr_db, long trials, std::uint64_t seed,
         int n_gon) {
        return simulate_ber(named_precoder(precoder, n_gon), precoder, K, L,
                            M, snr_db, trials, seed);
      },
      py::arg("precoder"), py::arg("K"), py::arg("L"), py::arg("M"),
      py::arg("snr_db"), py::arg("trials"), py::arg("seed"),
      py::arg("n_gon") = 64);

  m.def("snr_to_sigma", &snr_to_sigma, py::arg("snr_db"), py::arg("x_energy"));
  m.def(
      "sum_rate",
      [](const MatrixXcd& H, const LookupTable& table, int K, int L,
         double sigma_n_sq, bool complex_sigma) {
        const auto conv = complex_sigma ? ErfcConvention::complex_sigma
                                         : ErfcConvention::per_real_dimension;
        return sum_rate_per_user(H, table, K, L, sigma_n_sq, conv);
      },
      py::arg("H"), py::arg("table"), py::arg("K"), py::arg("L"),
      py::arg("sigma_n_sq"), py::arg("complex_sigma") = true);

  m.def("draw_channel",
        [](std::uint64_t seed, int K, int L, int M) {
          std::mt19937_64 rng(seed);
          return draw_channel(rng, K, L, M);
        },
        py::arg("seed"), py::arg("K"), py::arg("L"), py::arg("M"));
  m.def("draw_symbols",
        [](std::uint64_t seed, int KL) {
          std::mt19937_64 rng(seed);
          return draw_symbols(rng, KL);
        },
        py::arg("seed"), py::arg("KL"));
}
