#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cohen::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("sum prints the value") {
  auto r = run({"sum", "--r", "2", "--s", "2", "--n", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");
  for (const char* evaluator : {"direct", "divisor-sum", "fast", "shift"}) {
    r = run({"sum", "--r", "6", "--s", "1", "--n", "3", "--evaluator", evaluator});
    CHECK(r.code == 0);
    CHECK(r.out == "-2\n");
  }
  r = run({"sum", "--r", "2", "--s", "2", "--n", "1", "--evaluator", "kvector"});
  CHECK(r.out == "-1\n");
}

TEST_CASE("structured scalar output") {
  auto r = run({"sum", "--r", "4", "--s", "2", "--n", "16", "--output", "json"});
  REQUIRE(r.code == 0);
  const auto json = nlohmann::json::parse(r.out);
  CHECK(json["schema"] == 1);
  CHECK(json["value"] == "12");

  r = run({"-o", "csv", "gcd-s", "--m", "4", "--n", "8", "--s", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("gcd") != std::string::npos);
  CHECK(r.out.find('\n') != std::string::npos);

  r = run({"jordan", "--k", "2", "--n", "36", "--s", "2", "--zeta", "2", "-o", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["jordan"] == "864");
  CHECK(j["tau_s"] == 4);
  CHECK(j["mobius"] == 0);
  CHECK(j["factorization"] == "2^2 * 3^2");
}

TEST_CASE("expansion report") {
  auto r = run({"expansion", "--s", "1", "--k", "1", "--n", "1", "--Q", "10000", "-o", "json"});
  REQUIRE(r.code == 0);
  const auto json = nlohmann::json::parse(r.out);
  CHECK(json["final_abs_error"].get<double>() < 1e-3);
  CHECK(json["converged"] == true);

  r = run({"expansion", "--s", "2", "--k", "1", "--n", "3", "--Q", "500", "-o", "csv",
           "--checkpoints", "50", "250"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("Q,partial_sum,abs_error\n50,", 0) == 0);
}

TEST_CASE("local-check and sivaramakrishnan") {
  auto r = run({"local-check", "--s", "2", "--k", "2", "--n", "2", "--primes", "2,3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("lhs 81/100") != std::string::npos);
  CHECK(r.out.find("equal") != std::string::npos);

  r = run({"sivaramakrishnan", "--s", "1", "--k", "1", "--n", "1", "--R", "100", "-o", "json"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["kind"] == "expansion");
}

TEST_CASE("asymptotic, plot data and main-term") {
  const auto plot = std::filesystem::temp_directory_path() / "cohen_plot.txt";
  auto r = run({"asymptotic", "--s", "2", "--a", "3", "--b", "3", "--h", "12", "--N", "20000",
                "--emit-plot-data", plot.string(), "-o", "json"});
  REQUIRE(r.code == 0);
  const auto json = nlohmann::json::parse(r.out);
  CHECK(json["m"] == 2);
  std::ifstream in(plot);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("10000 ", 0) == 0);
  std::filesystem::remove(plot);

  r = run({"main-term", "--s", "2", "--a", "3", "--b", "3", "--h", "12", "--R", "10000", "--P", "10000", "-o", "json"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["difference"].get<double>() < 1e-6);
}

TEST_CASE("sieve-cache write and verify") {
  const auto path = std::filesystem::temp_directory_path() / "cohen_cli_cache.bin";
  auto r = run({"sieve-cache", "--kind", "mobius", "--N", "1000", "--out", path.string()});
  REQUIRE(r.code == 0);
  r = run({"sieve-cache", "--verify", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "cache valid\n");

  // Flip one entry: the check against a fresh sieve must notice.
  {
    std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(24 + 8 * 3);
    const char bogus = 5;
    f.write(&bogus, 1);
  }
  r = run({"sieve-cache", "--verify", path.string()});
  CHECK(r.code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("validation errors exit 1 with one line") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sum", "--r", "0", "--s", "1", "--n", "1"},
           {"sum", "--r", "2"},
           {"nonsense"},
           {},
           {"asymptotic", "--s", "2", "--a", "2", "--b", "3", "--h", "1"},
           {"local-check", "--s", "1", "--k", "1", "--n", "1", "--primes", "4"},
           {"sum", "--r", "10001", "--s", "2", "--n", "1", "--evaluator", "direct"},
       }) {
    const auto r = run(args);
    CHECK(r.code == 1);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
}

TEST_CASE("help lists every subcommand") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  for (const char* name : {"sum", "jordan", "gcd-s", "expansion", "local-check", "sivaramakrishnan",
                           "asymptotic", "main-term", "sieve-cache", "repro-all"}) {
    CHECK(r.out.find(name) != std::string::npos);
  }
}

TEST_CASE("identical invocations give byte-identical json") {
  const std::vector<std::string> args = {"asymptotic", "--s", "2", "--a", "4", "--b", "3",
                                         "--h", "4", "--N", "30000", "--threads", "2", "-o", "json"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("threads from the environment") {
  setenv("COHEN_THREADS", "0", 1);
  auto r = run({"expansion", "--s", "1", "--k", "1", "--n", "1", "--Q", "100"});
  CHECK(r.code == 1);
  setenv("COHEN_THREADS", "3", 1);
  r = run({"expansion", "--s", "1", "--k", "1", "--n", "1", "--Q", "100"});
  CHECK(r.code == 0);
  unsetenv("COHEN_THREADS");
}
