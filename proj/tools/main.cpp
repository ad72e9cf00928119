// Command line driver: verify (identity battery over a parameter grid),
// profile (twist profile tables as CSV), sample (annotated point clouds).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "openbook/runner.hpp"

namespace {

int write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return 2;
  }
  out << payload;
  return 0;
}

bool parse_tolerance(const std::string& arg, std::string* name, double* tol) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) return false;
  *name = arg.substr(0, eq);
  const std::string value = arg.substr(eq + 1);
  try {
    std::size_t used = 0;
    *tol = std::stod(value, &used);
    return used == value.size();
  } catch (const std::exception&) {
    return false;
  }
}

int run_verify(const obk::RunConfig& cfg, const std::string& output,
               const std::string& format) {
  std::vector<obk::CheckReport> reports;
  try {
    reports = obk::run_grid(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::string payload;
  if (format == "json")
    payload = obk::render_json(cfg, reports);
  else if (format == "csv")
    payload = obk::render_csv(reports);
  else
    payload = obk::render_text(reports);
  if (const int rc = write_output(output, payload); rc != 0) return rc;
  if (!obk::all_pass(reports)) {
    std::cerr << "failing checks:\n";
    for (const auto& name : obk::failing_checks(reports))
      std::cerr << "  " << name << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of an open book construction"};
  app.require_subcommand(1);

  std::vector<int> ns;
  std::vector<int> ks;
  int samples = 200;
  std::uint64_t seed = 7;
  std::vector<std::string> tol_args;
  std::string output;
  std::string format = "json";
  std::string check = "all";

  CLI::App* verify = app.add_subcommand("verify", "run the identity battery");
  verify->add_option("--n", ns, "sphere parameters n (repeatable)")
      ->check(CLI::Range(2, 4));
  verify->add_option("--k", ks, "twist exponents k (repeatable)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--samples", samples, "random samples per check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "seed of the sample streams");
  verify->add_option("--tol", tol_args,
                     "override a tolerance, as <check>=<real> (repeatable)");
  verify->add_option("--output", output, "write the report here (default stdout)");
  verify->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  verify->add_option("--check", check, "run a single named check, or 'all'");

  int profile_k = 0;
  std::string profile_output;
  CLI::App* profile =
      app.add_subcommand("profile", "tabulate the twist profile as CSV");
  profile->add_option("--k", profile_k, "twist exponent k")
      ->required()
      ->check(CLI::PositiveNumber);
  profile->add_option("--output", profile_output,
                      "write the table here (default stdout)");

  int sample_n = 0;
  int sample_k = 0;
  int sample_count = 10;
  std::uint64_t sample_seed = 7;
  std::string sample_output;
  CLI::App* sample =
      app.add_subcommand("sample", "emit annotated sample points as JSON lines");
  sample->add_option("--n", sample_n, "sphere parameter n")
      ->required()
      ->check(CLI::Range(2, 4));
  sample->add_option("--k", sample_k, "twist exponent k")
      ->required()
      ->check(CLI::PositiveNumber);
  sample->add_option("--samples", sample_count, "points per family")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_seed, "seed of the sample streams");
  sample->add_option("--output", sample_output,
                     "write the lines here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (verify->parsed()) {
    obk::RunConfig cfg;
    if (!ns.empty()) cfg.n_values = ns;
    if (!ks.empty()) cfg.k_values = ks;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.check_filter = check;
    for (const auto& arg : tol_args) {
      std::string name;
      double tol = 0;
      if (!parse_tolerance(arg, &name, &tol)) {
        std::cerr << "error: --tol expects <check>=<real>, got '" << arg
                  << "'\n";
        return 2;
      }
      cfg.tol_overrides[name] = tol;
    }
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    return run_verify(cfg, output, format);
  }

  if (profile->parsed())
    return write_output(profile_output, obk::profile_table(profile_k));

  if (sample->parsed())
    return write_output(sample_output,
                        obk::sample_lines(sample_n, sample_k, sample_count,
                                          sample_seed));

  return 2;
}
