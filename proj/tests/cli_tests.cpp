// End-to-end checks against the installed command-line binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

const char* cli_path() {
  const char* p = std::getenv("CBC_CHAOS_CLI");
  REQUIRE_MESSAGE(p != nullptr, "CBC_CHAOS_CLI must point at the binary");
  return p;
}

// Runs the binary through the shell, capturing stdout and the exit status.
RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += std::string("\"") + cli_path() + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const std::string& text) {
  return nlohmann::json::parse(text);
}

}  // namespace

TEST_CASE("lyapunov defaults to the analytic method and json output") {
  RunResult r = run_cli("lyapunov --cipher mini_feistel --seed 5");
  REQUIRE(r.exit_code == 0);
  auto j = parse(r.out);
  CHECK(j["method"] == "analytic_slope");
  CHECK(j["n"] == 10000);
  CHECK(std::fabs(j["estimate"].get<double>() - std::log(10.0)) <= 1e-12);
  CHECK(j["excluded"] == 0);
  CHECK(j["witness"].is_string());
}

TEST_CASE("lyapunov csv emits one term per step") {
  RunResult r = run_cli("lyapunov --cipher identity --seed 5 --n 3 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out ==
        "index,term\n0,2.302585092994046\n1,2.302585092994046\n"
        "2,2.302585092994046\n");
}

TEST_CASE("the two-trajectory method runs from the command line") {
  RunResult r = run_cli(
      "lyapunov --cipher mini_feistel --seed 8 --method two-trajectory "
      "--n 1000 --h0 1e-6");
  REQUIRE(r.exit_code == 0);
  auto j = parse(r.out);
  CHECK(j["method"] == "two_trajectory");
  CHECK(std::fabs(j["estimate"].get<double>() - std::log(10.0)) <= 1e-2);
  CHECK(j["excluded"].get<int>() < 50);
}

TEST_CASE("simulate with zero steps dumps a single entry") {
  RunResult r = run_cli("simulate --cipher identity --seed 2 --n 0");
  REQUIRE(r.exit_code == 0);
  auto j = parse(r.out);
  REQUIRE(j["trajectory"].is_array());
  CHECK(j["trajectory"].size() == 1);
  CHECK(j["trajectory"][0]["step"] == 0);
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::string cmd =
      "simulate --cipher mini_feistel --seed 9 --n 5 --mode strategy";
  RunResult a = run_cli(cmd);
  RunResult b = run_cli(cmd);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  RunResult c = run_cli(
      "simulate --cipher mini_feistel --seed 10 --n 5 --mode strategy");
  CHECK(a.out != c.out);
}

TEST_CASE("the environment seed matches the flag seed") {
  RunResult flag = run_cli("simulate --cipher mini_feistel --seed 42 --n 4");
  RunResult env = run_cli("simulate --cipher mini_feistel --n 4",
                          "CBC_CHAOS_SEED=42");
  CHECK(flag.out == env.out);
  // An explicit flag wins over the environment.
  RunResult both = run_cli("simulate --cipher mini_feistel --seed 42 --n 4",
                           "CBC_CHAOS_SEED=7");
  CHECK(flag.out == both.out);
}

TEST_CASE("validation problems exit with code one") {
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("simulate --format yaml").exit_code == 1);
  CHECK(run_cli("lyapunov --no-such-flag").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
  // Cipher width disagrees with the requested block width.
  CHECK(run_cli("simulate --N 10 --cipher "
                "'{\"family\":\"identity\",\"n_bits\":8}'")
            .exit_code == 1);
  // Companion separation out of range.
  CHECK(run_cli("lyapunov --method two-trajectory --h0 0.5").exit_code == 1);
  CHECK(run_cli("calibrate --map logistic --mu 5").exit_code == 1);
  CHECK(run_cli("probe --kind sensitivity --radius 0").exit_code == 1);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("lyapunov --help").exit_code == 0);
  CHECK(run_cli("probe --help").exit_code == 0);
}

TEST_CASE("commute-check distinguishes the honest and corrupted maps") {
  RunResult ok = run_cli(
      "commute-check --cipher mini_feistel --seed 3 --samples 50 --n 10");
  REQUIRE(ok.exit_code == 0);
  auto j = parse(ok.out);
  CHECK(j["success"] == true);
  CHECK(j["mismatches"] == 0);

  RunResult bad = run_cli(
      "commute-check --cipher mini_feistel --seed 3 --samples 10 --n 5 "
      "--corrupt");
  CHECK(bad.exit_code == 2);
  auto jb = parse(bad.out);
  CHECK(jb["success"] == false);
  CHECK(jb["witness"]["iterate"] == 1);
}

TEST_CASE("probe reports use the shared schema") {
  RunResult r = run_cli("probe --kind sensitivity --cipher mini_feistel "
                        "--seed 6 --radius 1e-5 --horizon 100");
  REQUIRE(r.exit_code == 0);
  auto j = parse(r.out);
  for (const char* key :
       {"method", "n", "estimate", "excluded", "witness", "success",
        "parameters"})
    CHECK(j.contains(key));
  CHECK(j["method"] == "sensitivity");
  CHECK(j["success"] == true);
  CHECK(j["estimate"].get<double>() > 1.0);

  RunResult reg = run_cli("probe --kind regularity --cipher bit_permutation "
                          "--seed 6 --epsilon 1e-3");
  REQUIRE(reg.exit_code == 0);
  auto jr = parse(reg.out);
  CHECK(jr["method"] == "regularity");
  CHECK(jr["success"] == true);
  CHECK(jr["estimate"].get<double>() < 1e-3);
}

TEST_CASE("an impossible probe exits with code two and says why") {
  // Reaching state 1023 from 0 needs ten steering steps; two are allowed.
  RunResult r = run_cli(
      "probe --kind transitivity --cipher identity --seed 6 "
      "--u-state 0 --v-state 1023 --horizon 2");
  CHECK(r.exit_code == 2);
  auto j = parse(r.out);
  CHECK(j["success"] == false);
  CHECK(j.contains("failure_reason"));
  CHECK(j["parameters"]["horizon"] == 2);
}

TEST_CASE("probe and commute-check refuse csv output") {
  CHECK(run_cli("probe --kind sensitivity --format csv").exit_code == 1);
  CHECK(run_cli("commute-check --format csv").exit_code == 1);
}

TEST_CASE("the distance table contrasts the two metrics") {
  RunResult r = run_cli(
      "distance-compare --center 1.5 --span 1..2 --step 0.25");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out ==
        "index,x,D,delta\n"
        "0,1.00,0.5,0.5\n"
        "1,1.25,0.35,0.25\n"
        "2,1.50,0,0\n"
        "3,1.75,0.25,0.25\n"
        "4,2.00,2.5,0.5\n");

  RunResult near = run_cli(
      "distance-compare --center 1.5 --span 1.49..1.49 --step 0.01");
  REQUIRE(near.exit_code == 0);
  // Euclidean-close, refined-far: the digit metric keeps the gap visible.
  CHECK(near.out ==
        "index,x,D,delta\n"
        "0,1.49,0.18999999999999997,0.009999999999999998\n");
}

TEST_CASE("output lands in a file when requested") {
  const std::string path = "/tmp/cbc_chaos_cli_test_out.json";
  std::remove(path.c_str());
  RunResult direct = run_cli("lyapunov --cipher identity --seed 4 --n 7");
  RunResult filed = run_cli("lyapunov --cipher identity --seed 4 --n 7 --out " +
                            path);
  REQUIRE(filed.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str() == direct.out);
  std::remove(path.c_str());
}
