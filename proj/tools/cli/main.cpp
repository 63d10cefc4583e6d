#include "dsflow/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  namespace cli = dsflow::cli;
  CLI::App app{"Locally constrained inverse curvature flows of radial graphs in de Sitter space"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Integrate a flow from a config file");
  run->add_option("--config", config, "key=value run configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (overrides the config)");

  auto* check = app.add_subcommand("check", "Residual table for the initial hypersurface of a config");
  check->add_option("--config", config, "key=value run configuration")->required()->check(CLI::ExistingFile);

  int n = 3;
  double r_min = 0.0;
  double r_max = 2.0;
  int steps = 20;
  std::string table_out;
  auto* table = app.add_subcommand("slice-table", "Quermassintegrals of coordinate slices as CSV");
  table->add_option("--n", n, "Hypersurface dimension")->required();
  table->add_option("--r-min", r_min, "Smallest slice radius");
  table->add_option("--r-max", r_max, "Largest slice radius");
  table->add_option("--steps", steps, "Number of intervals between r-min and r-max");
  table->add_option("--out", table_out, "CSV file (default: stdout)");

  std::string snapshot;
  auto* ineq = app.add_subcommand("inequality", "Evaluate xi(A0) - A2 on a snapshot");
  ineq->add_option("--snapshot", snapshot, "Snapshot file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigError;
  }

  if (*run) {
    std::optional<std::filesystem::path> override;
    if (!out_dir.empty()) override = out_dir;
    return cli::cmd_run(config, override, std::cout, std::cerr);
  }
  if (*check) return cli::cmd_check(config, std::cout, std::cerr);
  if (*table) {
    if (table_out.empty()) return cli::cmd_slice_table(n, r_min, r_max, steps, std::cout, std::cerr);
    std::ofstream os(table_out);
    if (!os) {
      std::cerr << "error: reason=config cannot write " << table_out << '\n';
      return cli::kConfigError;
    }
    return cli::cmd_slice_table(n, r_min, r_max, steps, os, std::cerr);
  }
  return cli::cmd_inequality(snapshot, std::cout, std::cerr);
}
