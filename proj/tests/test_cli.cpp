#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

// End-to-end checks of the installed command surface: flags, exit codes,
// and output formats.  WEYLSTEER_CLI_PATH is injected by CMake.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, bool keep_stderr = false) {
  const std::string cmd = std::string(WEYLSTEER_CLI_PATH) + " " + args +
                          (keep_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("table: text output carries the paper rows") {
  const RunResult r = run("table");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("moderate") != std::string::npos);
  CHECK(r.output.find("1.2500") != std::string::npos);
  CHECK(r.output.find("inverted quadratic") != std::string::npos);
  CHECK(r.output.find("1.5000") != std::string::npos);
  CHECK(r.output.find("Landau's hat") != std::string::npos);
  CHECK(r.output.find("1.8750") != std::string::npos);
}

TEST_CASE("table: csv format and deterministic files") {
  const RunResult r = run("table --format csv");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "label,family,param,t1_units");
  std::getline(lines, line);
  CHECK(line == "none,rectangular,epsilon=0.0000,1.0000");
  std::getline(lines, line);
  CHECK(line == "fast,trapezoidal,epsilon=0.0250,1.0256");

  const char* path1 = "cli_table_1.csv";
  const char* path2 = "cli_table_2.csv";
  CHECK(run(std::string("table --format csv --out ") + path1).exit_code == 0);
  CHECK(run(std::string("table --format csv --out ") + path2).exit_code == 0);
  CHECK(slurp(path1) == slurp(path2));
  CHECK(slurp(path1) == r.output);
  std::remove(path1);
  std::remove(path2);
}

TEST_CASE("table: json format parses") {
  const RunResult r = run("table --format json");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  REQUIRE(j.size() == 10);
  CHECK(j[9]["family"] == "Landau's hat");
}

TEST_CASE("verify: passes on the full k range") {
  const RunResult r = run("verify --n 25");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);

  CHECK(run("verify --k-min 0 --k-max 0 --n 1").exit_code == 0);
}

TEST_CASE("verify: rejects k outside the Lambda domain") {
  const RunResult r = run("verify --k-min -8 --k-max 8 --n 10", true);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("|k| <= 7") != std::string::npos);
}

TEST_CASE("simulate: solved profiles reach the gate") {
  const RunResult r =
      run("simulate --k 2 --profile sinusoidal --solve-t1 --steps 512 "
          "--format json");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["verdict"] == "exact-up-to-phase");
  CHECK(j["fidelity"].get<double>() > 1.0 - 1e-7);
}

TEST_CASE("simulate: wrong pulse area fails the verdict") {
  const RunResult r =
      run("simulate --k 0 --profile rectangular,t1=0.785398163397448 "
          "--steps 64 --format json");
  CHECK(r.exit_code == 1);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["fidelity"].get<double>() < 0.99);
}

TEST_CASE("simulate: invalid inputs exit 2") {
  CHECK(run("simulate --k 9 --profile rectangular --solve-t1").exit_code == 2);
  CHECK(run("simulate --k 0 --profile gaussian --solve-t1").exit_code == 2);
  CHECK(run("simulate --k 0").exit_code == 2);  // missing --profile
  CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("sweep: tracking grid peaks at zero error") {
  const RunResult r =
      run("sweep --kind tracking --k 0 --profile rectangular --solve-t1 "
          "--min -0.08 --max 0.08 --n 5 --steps 64");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "delta1,delta2,fidelity");
  double best_fid = 0.0, best_delta = 1.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string d1, d2, fid;
    std::getline(fields, d1, ',');
    std::getline(fields, d2, ',');
    std::getline(fields, fid, ',');
    if (std::stod(fid) > best_fid) {
      best_fid = std::stod(fid);
      best_delta = std::stod(d1);
    }
  }
  CHECK(rows == 5);
  CHECK(best_delta == doctest::Approx(0.0));
  CHECK(best_fid > 1.0 - 1e-9);
}

TEST_CASE("sweep: area grid peaks at theta = pi/2") {
  const RunResult r =
      run("sweep --kind area --k 1 --profile landau_hat --solve-t1 "
          "--min 0.9 --max 1.1 --n 5 --steps 128");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "theta,fidelity");
  double best_fid = 0.0, best_theta = 0.0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string theta, fid;
    std::getline(fields, theta, ',');
    std::getline(fields, fid, ',');
    if (std::stod(fid) > best_fid) {
      best_fid = std::stod(fid);
      best_theta = std::stod(theta);
    }
  }
  CHECK(best_theta == doctest::Approx(1.5707963267948966).epsilon(1e-9));
  CHECK(best_fid > 1.0 - 1e-7);

  // identical flags, identical bytes
  const RunResult again =
      run("sweep --kind area --k 1 --profile landau_hat --solve-t1 "
          "--min 0.9 --max 1.1 --n 5 --steps 128");
  CHECK(again.output == r.output);
}

TEST_CASE("sweep: empty grid exits 2") {
  CHECK(run("sweep --kind tracking --k 0 --profile rectangular --solve-t1 "
            "--min 0 --max 1 --n 0")
            .exit_code == 2);
}

TEST_CASE("schedule: emits the four-segment JSON document") {
  const RunResult r = run("schedule --k 0.5 --profile sinusoidal --solve-t1");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["k"].get<double>() == doctest::Approx(0.5));
  REQUIRE(j["segments"].size() == 4);
  CHECK(j["segments"][0]["type"] == "local");
  CHECK(j["segments"][1]["profile"]["family"] == "sinusoidal");

  // unsolved area is a validation error here
  CHECK(run("schedule --k 0.5 --profile sinusoidal").exit_code == 2);
}
