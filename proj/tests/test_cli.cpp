#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef DELTAM_CLI_PATH
#error "DELTAM_CLI_PATH must point at the command line binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DELTAM_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scratch_path(const std::string& name) {
  std::ostringstream os;
  os << "cli_scratch_" << name;
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

}  // namespace

TEST_CASE("stirling subcommand") {
  auto r = run_cli("stirling --n 4 --k 2");
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(j["value"] == "7");

  auto big = run_cli("stirling --n 10 --k 5");
  CHECK(json::parse(big.output)["value"] == "42525");
}

TEST_CASE("djokovic subcommand") {
  auto r = run_cli("djokovic --s 3");
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(j["equal"] == true);
  CHECK(j["terms_before_cancel"] == 32);
  CHECK(j["s"] == 3);
}

TEST_CASE("montel subcommand on an affine function") {
  const std::string f = scratch_path("affine.json");
  write_file(f, R"({"terms":[{"lambda":[0,0],"coeffs":[[3,0],[2,0]]}]})");
  auto r = run_cli("montel --m 2 --h1 \"1\" --h2 \"0+1*sqrt2\" --f " + f);
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(j["verdict"] == "POLYNOMIAL");
  REQUIRE(j["coeffs"].size() == 2);
  CHECK(j["coeffs"][0][0].get<double>() == doctest::Approx(3.0));
  CHECK(j["coeffs"][0][1].get<double>() == doctest::Approx(0.0));
  CHECK(j["coeffs"][1][0].get<double>() == doctest::Approx(2.0));
  std::remove(f.c_str());
}

TEST_CASE("montel subcommand detects commensurable steps") {
  const std::string f = scratch_path("affine2.json");
  write_file(f, R"({"terms":[{"lambda":[0,0],"coeffs":[[1,0]]}]})");
  auto r = run_cli("montel --m 2 --h1 2 --h2 3 --f " + f);
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.output)["verdict"] == "HYPOTHESIS_VIOLATED");
  std::remove(f.c_str());
}

TEST_CASE("malformed json exits one and reports the position") {
  const std::string f = scratch_path("broken.json");
  write_file(f, R"({"terms": [)");
  auto r = run_cli("montel --m 1 --h1 1 --h2 sqrt2 --f " + f);
  CHECK(r.exit_code == 1);
  auto j = json::parse(r.output);
  const std::string msg = j["error"].get<std::string>();
  CHECK(msg.find("parse") != std::string::npos);
  std::remove(f.c_str());
}

TEST_CASE("missing file and unknown flags exit one") {
  CHECK(run_cli("montel --m 1 --h1 1 --h2 sqrt2 --f does_not_exist.json").exit_code ==
        1);
  CHECK(run_cli("stirling --n 4 --wat 2").exit_code == 1);
  CHECK(run_cli("nonsense").exit_code == 1);
}

TEST_CASE("matrix subcommand emits the block entries") {
  const std::string f = scratch_path("ambient.json");
  write_file(f, R"([{"lambda":[0,0],"mult":2},{"lambda":[1,0],"mult":1}])");
  auto r = run_cli("matrix --ambient " + f + " --step 1");
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(j["h"] == doctest::Approx(1.0));
  REQUIRE(j["blocks"].size() == 2);
  // zero block: [[0,1],[0,0]]
  CHECK(j["blocks"][0]["entries"][0][1][0].get<double>() == doctest::Approx(1.0));
  // exponential block: [e - 1]
  CHECK(j["blocks"][1]["entries"][0][0][0].get<double>() ==
        doctest::Approx(std::exp(1.0) - 1.0));
  std::remove(f.c_str());
}

TEST_CASE("closure subcommand grows the gapped polynomial space") {
  const std::string f = scratch_path("gap.json");
  write_file(f, R"({"ambient":[{"lambda":[0,0],"mult":3}],
                    "generators":[{"terms":[{"lambda":[0,0],"coeffs":[[1,0]]}]},
                                  {"terms":[{"lambda":[0,0],"coeffs":[[0,0],[0,0],[1,0]]}]}]})");
  auto r = run_cli("closure --kind box --subspace " + f + " --m 2 --h1 0.4");
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(j["dim_input"] == 2);
  CHECK(j["dim_closure"] == 3);
  std::remove(f.c_str());
}

TEST_CASE("decompose subcommand is deterministic for a fixed seed") {
  const std::string f = scratch_path("mixedspace.json");
  write_file(f, R"({"ambient":[{"lambda":[0,0],"mult":3},{"lambda":[1,0],"mult":1}],
                    "generators":[{"terms":[{"lambda":[0,0],"coeffs":[[1,0]]}]},
                                  {"terms":[{"lambda":[0,0],"coeffs":[[0,0],[0,0],[1,0]]}]},
                                  {"terms":[{"lambda":[1,0],"coeffs":[[1,0]]}]}]})");
  auto r1 = run_cli("--seed 5 decompose --subspace " + f + " --m 2");
  auto r2 = run_cli("--seed 5 decompose --subspace " + f + " --m 2");
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);
  auto j = json::parse(r1.output);
  CHECK(j["P"]["dim"] == 2);
  CHECK(j["E"]["dim"] == 1);
  CHECK(j["certificate"][0]["block"] == 1);
  CHECK(j["certificate"][0]["prefix"] == 1);
  std::remove(f.c_str());
}

TEST_CASE("counterexample subcommand verifies and dumps samples") {
  const std::string csv = scratch_path("wave.csv");
  auto r = run_cli("counterexample --m 2 --p 2 --q 3 --csv " + csv);
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(j["max_residual_ph"].get<double>() <= 1e-9);
  CHECK(j["max_residual_qh"].get<double>() <= 1e-9);
  CHECK_FALSE(j["corner"].is_null());

  std::ifstream in(csv);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,value");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 200);
  std::remove(csv.c_str());
}

TEST_CASE("recover subcommand accepts an exponential family") {
  const std::string f = scratch_path("family.json");
  write_file(f,
             R"({"m":1,"functions":[{"terms":[{"lambda":[1,0],"coeffs":[[1,0]]}]}]})");
  auto r = run_cli("recover --family " + f);
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  REQUIRE(j["accepted"].size() >= 1);
  CHECK(j["accepted"][0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(j["misfit"].get<double>() < 1e-2);
  std::remove(f.c_str());
}

TEST_CASE("identical invocations yield identical bytes") {
  auto r1 = run_cli("counterexample --m 2 --p 2 --q 3");
  auto r2 = run_cli("counterexample --m 2 --p 2 --q 3");
  CHECK(r1.output == r2.output);
}
