#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ovkit/cli/commands.hpp"
#include "ovkit/core/dataset.hpp"
#include "ovkit/oracle.hpp"

using namespace ovkit;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ovkit_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("gen is byte-reproducible and planted witnesses hold") {
  const auto dir = scratch("gen");
  const auto a = (dir / "a").string(), b = (dir / "b").string();
  for (const auto& prefix : {a, b})
    REQUIRE(run({"gen", "--model", "planted-orthogonal", "--n", "20", "--d", "12", "--seed", "9", "--out", prefix,
                 "--no-timing"})
                .code == 0);
  CHECK(slurp(a + ".0.txt") == slurp(b + ".0.txt"));
  CHECK(slurp(a + ".1.txt") == slurp(b + ".1.txt"));

  const auto sidecar = json::parse(slurp(a + ".json"));
  const auto fa = load_family(a + ".0.txt");
  const auto fb = load_family(a + ".1.txt");
  const auto& w = sidecar["witness"];
  CHECK(oracle::slow_inner_product(fa[w["a_index"].get<std::size_t>()], fb[w["b_index"].get<std::size_t>()]) == 0);
  CHECK(oracle::brute_count_ov(fa, fb) >= 1);

  const auto other = (dir / "c").string();
  run({"gen", "--n", "20", "--d", "12", "--seed", "10", "--out", other});
  CHECK(slurp(a + ".0.txt") != slurp(other + ".0.txt"));
}

TEST_CASE("uniform orthogonal-pair counts follow the binomial expectation") {
  const auto dir = scratch("uniform");
  const double n = 64, p = std::pow(0.75, 10);
  const double mean = n * n * p;
  const double sd = std::sqrt(n * n * p * (1 - p));
  double total = 0;
  const int seeds = 20;
  for (int s = 1; s <= seeds; ++s) {
    const auto prefix = (dir / ("u" + std::to_string(s))).string();
    REQUIRE(run({"gen", "--model", "uniform", "--p", "1/2", "--n", "64", "--d", "10", "--seed", std::to_string(s),
                 "--out", prefix})
                .code == 0);
    total += static_cast<double>(
        oracle::brute_count_ov(load_family(prefix + ".0.txt"), load_family(prefix + ".1.txt")).get_d());
  }
  // Pairs are not independent, so the spread is checked loosely against 5 sd of the mean.
  CHECK(std::abs(total / seeds - mean) <= 5 * sd);
}

TEST_CASE("count-ov with the oracle stays within the error bound") {
  const auto dir = scratch("count");
  const auto prefix = (dir / "i").string();
  REQUIRE(run({"gen", "--n", "48", "--d", "10", "--seed", "3", "--out", prefix}).code == 0);
  const auto r = run({"count-ov", "--a", prefix + ".0.txt", "--b", prefix + ".1.txt", "--eps", "0.05", "--oracle"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["within_bound"].get<bool>());
  CHECK(j["config"]["command"] == "count-ov");
  CHECK(j.contains("wall_time_ms"));
  CHECK(j["result"]["value"]["exact"].is_string());
}

TEST_CASE("verify-poly certifies and round-trips") {
  const auto dir = scratch("verify");
  const auto path = (dir / "p.json").string();
  const auto r = run({"verify-poly", "--d", "16", "--eps", "0.1", "--out", path});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["certified"].get<bool>());
  const auto again = run({"verify-poly", "--in", path});
  CHECK(again.code == 0);

  auto poly = json::parse(slurp(path));
  poly["power_coeffs"][0] = "5";
  poly["elem_coeffs"][0] = "5";
  std::ofstream(path) << poly.dump();
  CHECK(run({"verify-poly", "--in", path}).code == cli::kExitCertification);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitInput);
  CHECK(run({"no-such-command"}).code == cli::kExitInput);
  CHECK(run({"count-ov", "--a", "/nonexistent/a", "--b", "/nonexistent/b"}).code == cli::kExitInput);
  CHECK(run({"verify-poly", "--d", "16", "--eps", "1.5"}).code == cli::kExitInput);
  CHECK(run({"gen", "--model", "nope", "--out", (scratch("bad") / "x").string()}).code == cli::kExitInput);

  const auto dir = scratch("limits");
  const auto prefix = (dir / "i").string();
  REQUIRE(run({"gen", "--n", "8", "--d", "40", "--seed", "1", "--out", prefix}).code == 0);
  const auto r = run({"count-ov", "--a", prefix + ".0.txt", "--b", prefix + ".1.txt", "--eps", "0.001",
                      "--backend", "dense", "--dense-cap", "1000"});
  CHECK(r.code == cli::kExitResource);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("csv commands") {
  const auto bench = run({"bench", "--suite", "sketch", "--n", "16", "--d", "8", "--eps", "1/4", "--no-timing"});
  REQUIRE(bench.code == 0);
  CHECK(bench.out.rfind("n,d,eps,sketch_width,ms\n", 0) == 0);
  CHECK(bench.out.find(",NA") != std::string::npos);

  const auto cal = run({"calibrate", "--eps", "1/4", "--tau", "4", "--d", "32", "--trials", "1000"});
  REQUIRE(cal.code == 0);
  CHECK(cal.out.rfind("eps,tau,d,k,envelope,completeness_error,soundness_error,trials\n", 0) == 0);
}

TEST_CASE("outputs do not depend on the thread count") {
  const auto dir = scratch("threads");
  const auto prefix = (dir / "i").string();
  REQUIRE(run({"gen", "--model", "planted-orthogonal", "--n", "64", "--d", "16", "--seed", "4", "--out", prefix}).code ==
          0);
  const std::string a = prefix + ".0.txt", b = prefix + ".1.txt";
  const std::vector<std::vector<std::string>> commands{
      {"count-ov", "--a", a, "--b", b, "--eps", "1/10", "--oracle"},
      {"decide-ov", "--a", a, "--b", b, "--level", "5", "--reps", "30"},
      {"maxip", "--a", a, "--b", b, "--calibration-trials", "1000"},
  };
  for (auto cmd : commands) {
    cmd.push_back("--no-timing");
    auto one = cmd, four = cmd;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const auto r1 = run(one), r4 = run(four);
    CHECK(r1.code == 0);
    CHECK(r1.out == r4.out);
  }
}
