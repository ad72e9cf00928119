// End-to-end tests of the command line binary. Each case spawns the real
// executable and inspects exit status, stdout, and stderr.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = "cli_stdout.tmp";
  const std::string err_path = "cli_stderr.tmp";
  const std::string cmd = std::string(OPENBOOK_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = status < 0 ? status : WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

}  // namespace

TEST_CASE("verify exits cleanly and reports a passing grid cell") {
  const RunResult r =
      run_cli("verify --n 3 --k 2 --samples 40 --seed 7 --format json");
  CHECK_EQ(r.exit_code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("pass").get<bool>());
  CHECK_EQ(doc.at("reports").size(), 1);
  CHECK_EQ(doc.at("reports").at(0).at("n").get<int>(), 3);
  CHECK_EQ(doc.at("reports").at(0).at("k").get<int>(), 2);
}

TEST_CASE("out-of-range parameters are usage errors") {
  CHECK_EQ(run_cli("verify --n 5 --k 1").exit_code, 2);
  CHECK_EQ(run_cli("verify --n 3 --k 0").exit_code, 2);
  CHECK_EQ(run_cli("verify --badflag").exit_code, 2);
  CHECK_EQ(run_cli("profile").exit_code, 2);
  CHECK_EQ(run_cli("sample --n 9 --k 1").exit_code, 2);
  CHECK_EQ(run_cli("").exit_code, 2);
}

TEST_CASE("unknown check names and malformed tolerances are usage errors") {
  CHECK_EQ(run_cli("verify --n 2 --k 1 --check nonexistent").exit_code, 2);
  CHECK_EQ(run_cli("verify --n 2 --k 1 --tol nonexistent=1").exit_code, 2);
  CHECK_EQ(run_cli("verify --n 2 --k 1 --tol dehn_pullback").exit_code, 2);
  CHECK_EQ(run_cli("verify --n 2 --k 1 --tol dehn_pullback=abc").exit_code, 2);
}

TEST_CASE("numeric failure exits one and names the check") {
  const RunResult r = run_cli(
      "verify --n 2 --k 1 --samples 20 --check dehn_pullback "
      "--tol dehn_pullback=1e-30");
  CHECK_EQ(r.exit_code, 1);
  CHECK(r.err.find("dehn_pullback") != std::string::npos);
}

TEST_CASE("single-check runs honor the filter") {
  const RunResult r =
      run_cli("verify --n 2 --k 1 --samples 10 --check u_sup");
  CHECK_EQ(r.exit_code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK_EQ(doc.at("reports").at(0).at("checks").size(), 1);
  CHECK_EQ(
      doc.at("reports").at(0).at("checks").at(0).at("name").get<std::string>(),
      "u_sup");
}

TEST_CASE("reports are byte-identical across reruns") {
  const std::string args =
      "verify --n 3 --k 2 --samples 25 --seed 11 --check fg_identity";
  const RunResult a = run_cli(args + " --output cli_rep_a.json");
  const RunResult b = run_cli(args + " --output cli_rep_b.json");
  CHECK_EQ(a.exit_code, 0);
  CHECK_EQ(b.exit_code, 0);
  CHECK_EQ(slurp("cli_rep_a.json"), slurp("cli_rep_b.json"));
  CHECK(!slurp("cli_rep_a.json").empty());
  std::remove("cli_rep_a.json");
  std::remove("cli_rep_b.json");
}

TEST_CASE("text and csv formats render") {
  const RunResult t =
      run_cli("verify --n 2 --k 1 --samples 10 --check fg_values --format text");
  CHECK_EQ(t.exit_code, 0);
  CHECK(t.out.find("overall: PASS") != std::string::npos);
  const RunResult c =
      run_cli("verify --n 2 --k 1 --samples 10 --check fg_values --format csv");
  CHECK_EQ(c.exit_code, 0);
  CHECK(c.out.rfind("n,k,check,", 0) == 0);
  CHECK_EQ(run_cli("verify --n 2 --k 1 --format yaml").exit_code, 2);
}

TEST_CASE("profile emits the twist tables") {
  const RunResult r = run_cli("profile --k 2");
  CHECK_EQ(r.exit_code, 0);
  std::istringstream lines(r.out);
  std::string header, origin;
  std::getline(lines, header);
  CHECK_EQ(header, "y,f_k,I,h_k,h_aux");
  std::getline(lines, origin);
  CHECK_EQ(origin, "0,0,0,1,0");
  CHECK(r.out.find("\nr,g\n") != std::string::npos);
}

TEST_CASE("sample emits deterministic annotated points") {
  const RunResult r = run_cli("sample --n 2 --k 2 --samples 5 --seed 3");
  CHECK_EQ(r.exit_code, 0);
  std::istringstream lines(r.out);
  std::string line;
  int binding = 0, page = 0, torus = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "binding") {
      ++binding;
      CHECK(j.at("defect_f").get<double>() <= 1e-12);
      CHECK(j.at("defect_sphere").get<double>() <= 1e-12);
    } else if (kind == "page") {
      ++page;
      CHECK(j.at("theta_unit_err").get<double>() <= 1e-10);
    } else {
      ++torus;
    }
  }
  CHECK_EQ(binding, 5);
  CHECK_EQ(page, 5);
  CHECK_EQ(torus, 5);
  const RunResult again = run_cli("sample --n 2 --k 2 --samples 5 --seed 3");
  CHECK_EQ(again.out, r.out);
}

TEST_CASE("help is not an error") {
  CHECK_EQ(run_cli("--help").exit_code, 0);
  CHECK_EQ(run_cli("verify --help").exit_code, 0);
}
