// Verification driver: the named check battery over an (n, k) grid, report
// rendering, and the payload builders behind the command-line front end.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "openbook/report.hpp"

namespace obk {

struct RunConfig {
  std::vector<int> n_values{2, 3, 4};
  std::vector<int> k_values{1, 2, 3, 5, 8};
  int samples = 200;
  std::uint64_t seed = 7;
  std::map<std::string, double> tol_overrides;
  std::string check_filter = "all";  // a check name, or "all"

  void validate() const;  // throws std::invalid_argument
};

// Names of every check the battery can run, in execution order.
std::vector<std::string> known_checks();

// Run the battery for one (n, k) with the standard profile c_k = 4 k pi.
CheckReport run_battery(int n, int k, const RunConfig& cfg);

// Full grid; pairs run concurrently up to thread_budget(), results in
// configuration order. Deterministic for a fixed config.
std::vector<CheckReport> run_grid(const RunConfig& cfg);

bool all_pass(const std::vector<CheckReport>& reports);
std::vector<std::string> failing_checks(const std::vector<CheckReport>& reports);

// Renderers. JSON is the machine contract; text is a fixed-width table;
// CSV is one row per check.
std::string render_json(const RunConfig& cfg,
                        const std::vector<CheckReport>& reports);
std::string render_text(const std::vector<CheckReport>& reports);
std::string render_csv(const std::vector<CheckReport>& reports);

// CSV table of the profile functions on a geometric grid, plus the
// rescaling radius table; payload of the `profile` command.
std::string profile_table(int k);

// JSON-lines payload of the `sample` command: binding, page, and torus
// points annotated with their defect residuals.
std::string sample_lines(int n, int k, int count, std::uint64_t seed);

// OPENBOOK_THREADS when set (>= 1), hardware concurrency otherwise.
int thread_budget();

}  // namespace obk
