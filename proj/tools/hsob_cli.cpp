// hsob: run verification suites, best-constant sweeps, sequence tables and
// three-lines checks from a config file.
//
//   hsob <verify|sweep|sequences|interpolate> --config run.ini [--out out.csv] [--seed N] [--jobs N]
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 configuration or I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hsob/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hermite-Sobolev spectral verification runner"};
  std::string command;
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  app.add_option("command", command, "verify | sweep | sequences | interpolate (overrides [run] command)");
  app.add_option("--config", config_path, "config file")->required();
  app.add_option("--out", out_path, "CSV output path (overrides [output] path; default stdout)");
  app.add_option("--seed", seed, "seed for random test functions (overrides [run] seed)");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    hsob::cli::RunConfig cfg = hsob::cli::load_config(config_path);
    if (!command.empty()) {
      cfg.command = hsob::cli::parse_command(command);
      if (!cfg.command) throw hsob::cli::ConfigError(0, "unknown command '" + command + "'");
    }
    if (seed) cfg.seed = *seed;
    if (jobs) cfg.jobs = *jobs;
    if (out_path) cfg.output_path = *out_path;

    if (cfg.output_path) {
      std::ofstream out(*cfg.output_path, std::ios::binary | std::ios::trunc);
      if (!out) throw hsob::cli::ConfigError(0, "cannot open output '" + *cfg.output_path + "'");
      const int rc = hsob::cli::run(cfg, out);
      out.flush();
      if (!out) throw hsob::cli::ConfigError(0, "write to '" + *cfg.output_path + "' failed");
      return rc;
    }
    return hsob::cli::run(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "hsob: " << e.what() << '\n';
    return 2;
  }
}
