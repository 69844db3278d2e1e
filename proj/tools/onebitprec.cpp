// Experiment driver: BER sweeps, sum-rate sweeps, branch-and-bound
// complexity profiles, and lookup-table export. Writes a CSV plus a JSON
// metadata sidecar that can be re-ingested via --config.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "onebit/evaluation.hpp"
#include "onebit/precoders.hpp"

using json = nlohmann::json;
using namespace onebit;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Config {
  std::string experiment;
  int M = 4;
  int K = 2;
  int L = 1;
  std::string snr = "0:2:14";  // start:step:stop
  long trials = 1000;
  std::vector<std::string> precoders = {"bnb"};
  std::uint64_t seed = 1;
  int n_gon = 64;
  long channels = 50;
  std::vector<int> Ms = {4, 6, 8, 10};
  long instances = 30;
  std::string sigma_convention = "complex";  // or per-real-dim
  std::string output = "out.csv";
};

std::vector<double> parse_snr_grid(const std::string& spec) {
  double start = 0, step = 0, stop = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':')
    throw std::invalid_argument("snr grid must be start:step:stop");
  if (step <= 0) throw std::invalid_argument("snr step must be > 0");
  if (stop < start) throw std::invalid_argument("snr stop must be >= start");
  std::vector<double> grid;
  for (double v = start; v <= stop + step / 2.0; v += step) grid.push_back(v);
  return grid;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

PrecoderFn make_precoder(const std::string& name, const Config& cfg) {
  if (name == "bnb")
    return [](const MatrixXcd& H, const VectorXcd& s) {
      return bnb_precode(H, s);
    };
  if (name == "approx") return approx_1bit_precode;
  if (name == "pop")
    return [n = cfg.n_gon](const MatrixXcd& H, const VectorXcd& s) {
      return pop_precode(H, s, n);
    };
  if (name == "zf") return zf_quantized_precode;
  if (name == "exhaustive") return exhaustive_precode;
  throw std::invalid_argument("unknown precoder: " + name);
}

void validate(const Config& cfg) {
  static const std::set<std::string> experiments = {"ber", "sumrate",
                                                    "complexity", "table"};
  if (!experiments.count(cfg.experiment))
    throw std::invalid_argument("experiment must be one of ber, sumrate, "
                                "complexity, table");
  if (cfg.M < 1 || cfg.K < 1 || cfg.L < 1)
    throw std::invalid_argument("M, K, L must be >= 1");
  if (cfg.precoders.empty())
    throw std::invalid_argument("precoder set must be nonempty");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  for (const auto& p : cfg.precoders) {
    make_precoder(p, cfg);  // rejects unknown names
    if (p == "exhaustive" && cfg.M > 12)
      throw std::invalid_argument("cap violation: exhaustive requires M <= 12");
    if (p == "bnb" && cfg.M > 16)
      throw std::invalid_argument("cap violation: bnb requires M <= 16");
  }
  if (cfg.experiment == "table" && cfg.K * cfg.L > 8)
    throw std::invalid_argument("cap violation: table requires K*L <= 8");
  if (cfg.experiment == "complexity")
    for (int m : cfg.Ms)
      if (m > 16)
        throw std::invalid_argument("cap violation: bnb requires M <= 16");
  if (cfg.sigma_convention != "complex" &&
      cfg.sigma_convention != "per-real-dim")
    throw std::invalid_argument("sigma-convention: complex or per-real-dim");
  if (cfg.n_gon < 8) throw std::invalid_argument("n-gon must be >= 8");
  parse_snr_grid(cfg.snr);
}

json config_to_json(const Config& c) {
  return json{{"experiment", c.experiment},
              {"M", c.M},
              {"K", c.K},
              {"L", c.L},
              {"snr", c.snr},
              {"trials", c.trials},
              {"precoders", c.precoders},
              {"seed", c.seed},
              {"n_gon", c.n_gon},
              {"channels", c.channels},
              {"Ms", c.Ms},
              {"instances", c.instances},
              {"sigma_convention", c.sigma_convention},
              {"output", c.output}};
}

void apply_json(const json& j, Config& c, const CLI::App& app) {
  auto want = [&](const char* flag, const char* key) {
    return app.count(flag) == 0 && j.contains(key);
  };
  if (want("--experiment", "experiment")) c.experiment = j["experiment"];
  if (want("--M", "M")) c.M = j["M"];
  if (want("--K", "K")) c.K = j["K"];
  if (want("--L", "L")) c.L = j["L"];
  if (want("--snr", "snr")) c.snr = j["snr"];
  if (want("--trials", "trials")) c.trials = j["trials"];
  if (want("--precoders", "precoders"))
    c.precoders = j["precoders"].get<std::vector<std::string>>();
  if (want("--seed", "seed")) c.seed = j["seed"];
  if (want("--n-gon", "n_gon")) c.n_gon = j["n_gon"];
  if (want("--channels", "channels")) c.channels = j["channels"];
  if (want("--Ms", "Ms")) c.Ms = j["Ms"].get<std::vector<int>>();
  if (want("--instances", "instances")) c.instances = j["instances"];
  if (want("--sigma-convention", "sigma_convention"))
    c.sigma_convention = j["sigma_convention"];
  if (want("--output", "output")) c.output = j["output"];
}

int run_experiment(const Config& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream csv;
  json extra;

  if (cfg.experiment == "ber") {
    const auto grid = parse_snr_grid(cfg.snr);
    csv << "precoder,snr_db,trials,bit_errors,ber\n";
    for (size_t pi = 0; pi < cfg.precoders.size(); ++pi) {
      const auto& name = cfg.precoders[pi];
      const auto records =
          simulate_ber(make_precoder(name, cfg), name, cfg.K, cfg.L, cfg.M,
                       grid, cfg.trials, split_seed(cfg.seed, 1000 + pi));
      for (const auto& r : records)
        csv << r.precoder << ',' << fmt(r.snr_db) << ',' << r.trials << ','
            << r.bit_errors << ',' << fmt(r.ber) << '\n';
    }
  } else if (cfg.experiment == "sumrate") {
    const auto grid = parse_snr_grid(cfg.snr);
    const auto conv = cfg.sigma_convention == "complex"
                          ? ErfcConvention::complex_sigma
                          : ErfcConvention::per_real_dimension;
    csv << "precoder,snr_db,channels_averaged,rate_bpcu\n";
    for (size_t pi = 0; pi < cfg.precoders.size(); ++pi) {
      const auto& name = cfg.precoders[pi];
      const PrecoderFn fn = make_precoder(name, cfg);
      std::vector<double> totals(grid.size(), 0.0);
      for (long ch = 0; ch < cfg.channels; ++ch) {
        std::mt19937_64 rng(split_seed(cfg.seed, 2000 + pi * 100000 + ch));
        const MatrixXcd H = draw_channel(rng, cfg.K, cfg.L, cfg.M);
        const LookupTable table = build_lookup_table(H, fn);
        for (size_t i = 0; i < grid.size(); ++i)
          totals[i] += sum_rate_total(H, table, cfg.K, cfg.L,
                                      snr_to_sigma(grid[i], 1.0), conv);
      }
      for (size_t i = 0; i < grid.size(); ++i)
        csv << name << ',' << fmt(grid[i]) << ',' << cfg.channels << ','
            << fmt(totals[i] / cfg.channels) << '\n';
    }
  } else if (cfg.experiment == "complexity") {
    const auto prof =
        complexity_profile(cfg.K, cfg.L, cfg.Ms, cfg.instances, cfg.seed);
    csv << "M,two_M,instances,mean_visited_branches,mean_lp_iterations\n";
    for (const auto& rec : prof.points)
      csv << rec.M << ',' << 2 * rec.M << ',' << rec.instances << ','
          << fmt(rec.mean_visited_branches) << ','
          << fmt(rec.mean_lp_iterations) << '\n';
    extra["loglog_slope"] = prof.loglog_slope;
  } else {  // table
    std::mt19937_64 rng(split_seed(cfg.seed, 3000));
    const MatrixXcd H = draw_channel(rng, cfg.K, cfg.L, cfg.M);
    const LookupTable table =
        build_lookup_table(H, make_precoder(cfg.precoders.front(), cfg));
    csv << "symbol_index";
    for (int i = 0; i < 2 * cfg.M; ++i) csv << ",x_r_" << i;
    csv << '\n';
    for (size_t idx = 0; idx < table.entries.size(); ++idx) {
      const VectorXd xr = realify_vector(table.entries[idx]);
      csv << idx;
      for (Eigen::Index i = 0; i < xr.size(); ++i) csv << ',' << fmt(xr[i]);
      csv << '\n';
    }
  }

  std::ofstream out(cfg.output);
  if (!out) throw std::runtime_error("cannot open output: " + cfg.output);
  out << csv.str();
  out.close();

  json meta;
  meta["config"] = config_to_json(cfg);
  meta["seed"] = cfg.seed;
  meta["version"] = kVersion;
  meta["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  for (auto& [k, v] : extra.items()) meta[k] = v;
  std::ofstream ms(cfg.output + ".meta.json");
  ms << meta.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-bit MIMO precoding experiments"};
  Config cfg;
  std::string config_path;
  std::string precoders_csv;
  std::string ms_csv;

  app.add_option("--experiment", cfg.experiment,
                 "ber | sumrate | complexity | table");
  app.add_option("--config", config_path, "JSON config file (flags override)");
  app.add_option("--M", cfg.M, "transmit antennas");
  app.add_option("--K", cfg.K, "users");
  app.add_option("--L", cfg.L, "antennas per user");
  app.add_option("--snr", cfg.snr, "SNR grid start:step:stop in dB");
  app.add_option("--trials", cfg.trials, "Monte Carlo trials per SNR point");
  app.add_option("--precoders", precoders_csv,
                 "comma list of bnb,approx,pop,zf,exhaustive");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--n-gon", cfg.n_gon, "polygon sides for pop");
  app.add_option("--channels", cfg.channels, "channel draws for sumrate");
  app.add_option("--Ms", ms_csv, "comma list of M values for complexity");
  app.add_option("--instances", cfg.instances,
                 "instances per M for complexity");
  app.add_option("--sigma-convention", cfg.sigma_convention,
                 "erfc noise scale: complex | per-real-dim");
  app.add_option("--output", cfg.output, "output CSV path");

  try {
    app.parse(argc, argv);
    if (app.count("--precoders")) {
      cfg.precoders.clear();
      std::istringstream in(precoders_csv);
      std::string tok;
      while (std::getline(in, tok, ','))
        if (!tok.empty()) cfg.precoders.push_back(tok);
    }
    if (app.count("--Ms")) {
      cfg.Ms.clear();
      std::istringstream in(ms_csv);
      std::string tok;
      while (std::getline(in, tok, ','))
        if (!tok.empty()) cfg.Ms.push_back(std::stoi(tok));
    }
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw CLI::ValidationError("--config", "cannot read file");
      json j = json::parse(in);
      if (j.contains("config")) j = j["config"];  // accept metadata sidecars
      apply_json(j, cfg, app);
    }
    validate(cfg);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  }

  try {
    return run_experiment(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return 2;
  }
}
