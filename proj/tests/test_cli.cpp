// Drives the onebitprec binary (path passed as argv[1]) through its
// documented surface: CSV schemas, determinism, caps, exit codes, and the
// metadata-sidecar round trip.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_binary;
std::filesystem::path g_dir;

int run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("ber sweep: golden header, grid arity, determinism") {
  const auto out = (g_dir / "ber.csv").string();
  const std::string args =
      "--experiment ber --M 2 --K 2 --L 1 --snr 0:5:10 --trials 50 "
      "--precoders approx,zf --seed 7 --output " + out;
  REQUIRE(run(args) == 0);
  const auto rows = lines(slurp(out));
  REQUIRE(rows.size() == 1 + 2 * 3);  // header + precoders x snr points
  CHECK(rows[0] == "precoder,snr_db,trials,bit_errors,ber");
  CHECK(rows[1].rfind("approx,0,50,", 0) == 0);

  const auto out2 = (g_dir / "ber2.csv").string();
  REQUIRE(run("--experiment ber --M 2 --K 2 --L 1 --snr 0:5:10 --trials 50 "
              "--precoders approx,zf --seed 7 --output " + out2) == 0);
  CHECK(slurp(out) == slurp(out2));
}

TEST_CASE("table export has 4^(KL-1) rows") {
  const auto out = (g_dir / "table.csv").string();
  REQUIRE(run("--experiment table --M 2 --K 2 --L 1 --precoders bnb "
              "--seed 3 --output " + out) == 0);
  const auto rows = lines(slurp(out));
  REQUIRE(rows.size() == 1 + 4);
  CHECK(rows[0] == "symbol_index,x_r_0,x_r_1,x_r_2,x_r_3");
}

TEST_CASE("complexity CSV schema") {
  const auto out = (g_dir / "cx.csv").string();
  REQUIRE(run("--experiment complexity --K 2 --L 1 --Ms 2,3 --instances 10 "
              "--seed 5 --output " + out) == 0);
  const auto rows = lines(slurp(out));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] ==
        "M,two_M,instances,mean_visited_branches,mean_lp_iterations");
  CHECK(slurp(out + ".meta.json").find("loglog_slope") != std::string::npos);
}

TEST_CASE("sumrate CSV schema") {
  const auto out = (g_dir / "sr.csv").string();
  REQUIRE(run("--experiment sumrate --M 2 --K 2 --L 1 --snr 0:10:10 "
              "--channels 2 --precoders approx --seed 5 --output " + out) == 0);
  const auto rows = lines(slurp(out));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "precoder,snr_db,channels_averaged,rate_bpcu");
}

TEST_CASE("usage errors exit 1 and name the cap") {
  CHECK(run("--experiment nope") == 1);
  CHECK(run("--experiment ber --precoders exhaustive --M 13 --output " +
            (g_dir / "x.csv").string()) == 1);
  CHECK(run("--experiment ber --precoders bnb --M 17") == 1);
  CHECK(run("--experiment table --M 2 --K 5 --L 2") == 1);
  CHECK(run("--experiment ber --snr 10:2:0") == 1);
  CHECK(run("--experiment ber --precoders unknown") == 1);
}

TEST_CASE("metadata sidecar re-ingests to the identical run") {
  const auto out = (g_dir / "orig.csv").string();
  REQUIRE(run("--experiment ber --M 2 --K 2 --L 1 --snr 0:5:5 --trials 40 "
              "--precoders approx --seed 11 --output " + out) == 0);
  const auto replay = (g_dir / "replay.csv").string();
  REQUIRE(run("--config " + out + ".meta.json --output " + replay) == 0);
  CHECK(slurp(out) == slurp(replay));
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-onebitprec>\n");
    return 2;
  }
  g_binary = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "onebitprec_cli_test";
  std::filesystem::create_directories(g_dir);
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}
