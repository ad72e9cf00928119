#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "openbook/runner.hpp"

using namespace obk;

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.n_values = {2};
  cfg.k_values = {2};
  cfg.samples = 25;
  cfg.seed = 99;
  return cfg;
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("check registry is populated and distinct") {
  const auto names = known_checks();
  CHECK(names.size() >= 40);
  const std::set<std::string> uniq(names.begin(), names.end());
  CHECK_EQ(uniq.size(), names.size());
  CHECK(uniq.count("dehn_pullback") == 1);
  CHECK(uniq.count("phi_defect") == 1);
  CHECK(uniq.count("ad_vs_fd") == 1);
}

TEST_CASE("config validation rejects bad input") {
  RunConfig cfg = small_config();
  cfg.n_values = {5};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.k_values = {0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.check_filter = "nonexistent";
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.tol_overrides["nonexistent"] = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.tol_overrides["dehn_pullback"] = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("a small battery passes every check") {
  const RunConfig cfg = small_config();
  const CheckReport rep = run_battery(2, 2, cfg);
  CHECK_EQ(rep.n, 2);
  CHECK_EQ(rep.k, 2);
  CHECK_EQ(rep.checks.size(), known_checks().size());
  for (const auto& chk : rep.checks) {
    INFO(chk.name, ": max_abs_err = ", chk.max_abs_err,
         ", tolerance = ", chk.tolerance);
    CHECK(chk.pass);
  }
  CHECK(rep.pass);
}

TEST_CASE("check filter restricts the battery") {
  RunConfig cfg = small_config();
  cfg.check_filter = "u_sup";
  const CheckReport rep = run_battery(2, 1, cfg);
  REQUIRE_EQ(rep.checks.size(), 1);
  CHECK_EQ(rep.checks[0].name, "u_sup");
}

TEST_CASE("tolerance overrides can force a failure") {
  RunConfig cfg = small_config();
  cfg.check_filter = "dehn_pullback";
  cfg.tol_overrides["dehn_pullback"] = 1e-30;
  const auto reports = run_grid(cfg);
  CHECK_FALSE(all_pass(reports));
  const auto names = failing_checks(reports);
  REQUIRE_EQ(names.size(), 1);
  CHECK(names[0].find("dehn_pullback") != std::string::npos);
  CHECK(names[0].find("n=2") != std::string::npos);
}

TEST_CASE("grid runs are deterministic byte for byte") {
  RunConfig cfg = small_config();
  cfg.check_filter = "fg_identity";
  const std::string a = render_json(cfg, run_grid(cfg));
  const std::string b = render_json(cfg, run_grid(cfg));
  CHECK_EQ(a, b);
}

TEST_CASE("json report carries the run description") {
  RunConfig cfg = small_config();
  cfg.check_filter = "u_sup";
  const auto reports = run_grid(cfg);
  const auto doc = nlohmann::json::parse(render_json(cfg, reports));
  CHECK_EQ(doc.at("samples").get<int>(), cfg.samples);
  CHECK_EQ(doc.at("seed").get<std::uint64_t>(), cfg.seed);
  CHECK(doc.at("pass").get<bool>());
  REQUIRE_EQ(doc.at("reports").size(), 1);
  const auto& rep = doc.at("reports").at(0);
  CHECK_EQ(rep.at("n").get<int>(), 2);
  CHECK_EQ(rep.at("k").get<int>(), 2);
  REQUIRE_EQ(rep.at("checks").size(), 1);
  const auto& chk = rep.at("checks").at(0);
  CHECK(chk.contains("name"));
  CHECK(chk.contains("samples"));
  CHECK(chk.contains("max_abs_err"));
  CHECK(chk.contains("tolerance"));
  CHECK(chk.contains("pass"));
}

TEST_CASE("text and csv renderings agree on the verdict") {
  RunConfig cfg = small_config();
  cfg.check_filter = "fg_values";
  const auto reports = run_grid(cfg);
  const std::string text = render_text(reports);
  CHECK(text.find("overall: PASS") != std::string::npos);
  const std::string csv = render_csv(reports);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK_EQ(header, "n,k,check,samples,max_abs_err,tolerance,pass");
  std::string row;
  std::getline(lines, row);
  CHECK(row.rfind("2,2,fg_values,", 0) == 0);
  CHECK(row.find(",true") != std::string::npos);
}

TEST_CASE("profile table starts at the exact origin row") {
  const std::string table = profile_table(2);
  std::istringstream lines(table);
  std::string header, first;
  std::getline(lines, header);
  CHECK_EQ(header, "y,f_k,I,h_k,h_aux");
  std::getline(lines, first);
  CHECK_EQ(first, "0,0,0,1,0");
  // The auxiliary column is strictly increasing down the momentum table.
  double prev = -1.0;
  std::string row;
  int rows = 0;
  while (std::getline(lines, row) && !row.empty()) {
    const auto last_comma = row.rfind(',');
    const double aux = std::stod(row.substr(last_comma + 1));
    CHECK(aux > prev);
    prev = aux;
    ++rows;
  }
  CHECK(rows >= 100);
  // Second block: the inverse-rescaling table with its own header.
  std::getline(lines, header);
  CHECK_EQ(header, "r,g");
  std::getline(lines, row);
  CHECK_EQ(row, "0,0");
}

TEST_CASE("sample lines are valid annotated records") {
  const std::string out = sample_lines(2, 2, 6, 31);
  std::istringstream lines(out);
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
      CHECK(j.at("defect_f").get<double>() <= 1e-9);
      CHECK(j.at("theta_unit_err").get<double>() <= 1e-10);
    } else {
      ++torus;
      CHECK_EQ(kind, "torus");
      CHECK(j.at("constraint_residual").get<double>() <= 1e-12);
    }
  }
  CHECK_EQ(binding, 6);
  CHECK_EQ(page, 6);
  CHECK_EQ(torus, 6);
  CHECK_EQ(sample_lines(2, 2, 6, 31), out);
  CHECK(sample_lines(2, 2, 6, 32) != out);
}

TEST_CASE("thread budget respects the environment override") {
  CHECK(thread_budget() >= 1);
}

}  // TEST_SUITE
