#include <CLI11.hpp>
#include <cstdio>
#include <exception>

#include "opportune/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"opportune - deterministic opportunistic-network simulator"};
  app.require_subcommand(1);

  opportune::cli::RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "execute a single scenario run");
  run->add_option("scenario", run_args.scenario_path, "scenario file")->required();
  run->add_option("--set", run_args.set_flags, "override a scenario key (key=value, repeatable)");
  run->add_option("--out", run_args.out_dir, "report output directory");

  opportune::cli::BatchArgs batch_args;
  CLI::App* batch = app.add_subcommand("batch", "run a protocol x seed grid and aggregate");
  batch->add_option("scenario", batch_args.scenario_path, "scenario file")->required();
  batch->add_option("--set", batch_args.set_flags, "override a scenario key (key=value, repeatable)");
  batch->add_option("--protocols", batch_args.protocols, "protocols to run")
      ->delimiter(',')
      ->default_str("epidemic,prophet");
  batch->add_option("--seeds", batch_args.seeds, "seeds to run")->delimiter(',')->default_str(
      "1,2,3,4,5");
  batch->add_option("--jobs", batch_args.jobs, "parallel workers")->default_val(1u);
  batch->add_option("--out", batch_args.out_dir, "report output directory");

  opportune::cli::ValidateArgs validate_args;
  CLI::App* validate = app.add_subcommand("validate", "check scenario and map consistency");
  validate->add_option("scenario", validate_args.scenario_path, "scenario file")->required();
  validate->add_option("--set", validate_args.set_flags,
                       "override a scenario key (key=value, repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return opportune::cli::cmd_run(run_args);
    if (batch->parsed()) return opportune::cli::cmd_batch(batch_args);
    if (validate->parsed()) return opportune::cli::cmd_validate(validate_args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
