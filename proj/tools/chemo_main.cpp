#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chemo/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "chemo: finite-difference simulator and verification harness for "
      "chemotaxis with local and nonlocal logistic growth"};
  app.require_subcommand(1);

  chemo::RunOptions run_opts;
  CLI::App* run = app.add_subcommand("run", "simulate one configuration");
  run->add_option("config", run_opts.config_path, "config file")->required();
  run->add_option("--output-dir", run_opts.output_dir, "artifact directory");
  run->add_option("--seed", run_opts.seed_override,
                  "override the random initial-data seed");

  chemo::CheckOptions check_opts;
  CLI::App* check =
      app.add_subcommand("check", "evaluate condition H1 or H2 for a config");
  check->add_option("config", check_opts.config_path, "config file")->required();
  check->add_option("--hypothesis", check_opts.hypothesis, "h1 or h2")
      ->check(CLI::IsMember({"h1", "h2"}));
  check->add_option("--output-dir", check_opts.output_dir, "report directory");

  chemo::SweepOptions sweep_opts;
  CLI::App* sweep =
      app.add_subcommand("sweep", "run a cartesian parameter sweep");
  sweep->add_option("spec", sweep_opts.spec_path, "sweep spec file")->required();
  sweep->add_option("--output-dir", sweep_opts.output_dir, "artifact directory");
  sweep->add_option("--parallelism", sweep_opts.parallelism,
                    "worker count override");

  chemo::PullbackOptions pull_opts;
  CLI::App* pull = app.add_subcommand(
      "pullback", "approximate an entire solution by pulled-back runs");
  pull->add_option("config", pull_opts.config_path, "config file")->required();
  pull->add_option("--depths", pull_opts.depths, "pre-run lengths, increasing")
      ->required()
      ->delimiter(',');
  pull->add_option("--output-dir", pull_opts.output_dir, "artifact directory");

  chemo::OracleOptions oracle_opts;
  oracle_opts.goldens_path = "configs/goldens.json";
  CLI::App* oracle =
      app.add_subcommand("oracle", "run the analytic/brute-force oracle suite");
  oracle->add_option("--goldens", oracle_opts.goldens_path, "goldens file");
  oracle->add_flag("--regenerate", oracle_opts.regenerate,
                   "rewrite goldens from fresh measurements");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : chemo::kExitConfigError;
  }

  if (run->parsed()) return chemo::cmd_run(run_opts, std::cout, std::cerr);
  if (check->parsed()) return chemo::cmd_check(check_opts, std::cout, std::cerr);
  if (sweep->parsed()) return chemo::cmd_sweep(sweep_opts, std::cout, std::cerr);
  if (pull->parsed()) return chemo::cmd_pullback(pull_opts, std::cout, std::cerr);
  if (oracle->parsed())
    return chemo::cmd_oracle(oracle_opts, std::cout, std::cerr);
  return chemo::kExitConfigError;
}
