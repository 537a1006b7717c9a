// vfcsched: experiment harness for the fog/cloud task-scheduling lab.
//
// Subcommands:
//   run         run the experiment described by a JSON or TOML config
//   compare     all five algorithms over the default task-count sweep
//   sweep-gwo   optimizer parameter grid with convergence charts
//   sensitivity node-count study (and the no-vehicles ablation)
//   montage     export (and optionally schedule) the Montage workload
//
// Exit codes: 0 success, 2 configuration problem, 3 one or more cells were
// infeasible.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vfc/experiment.hpp"

namespace {

using vfc::experiment::ExperimentConfig;
using vfc::experiment::RunOutput;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  int jobs = 1;
  bool timing = false;
  std::vector<std::string> algos;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_config = true) {
  if (with_config) {
    cmd->add_option("--config", args.config_path, "JSON or TOML experiment config");
  }
  cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--jobs", args.jobs, "worker threads for sweep cells")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--timing", args.timing,
                "write measured wall-clock into elapsed_s (breaks byte-for-byte "
                "reproducibility of the CSVs)");
  cmd->add_option("--algo", args.algos,
                  "restrict to these algorithms (gwo, random, min, max, met); repeatable");
}

ExperimentConfig make_config(const CommonArgs& args) {
  ExperimentConfig config;
  if (!args.config_path.empty()) {
    config = vfc::experiment::load_config(args.config_path);
  }
  if (args.timing) config.emit_measured_elapsed = true;
  if (!args.algos.empty()) config.algorithms = args.algos;
  return config;
}

int report(const RunOutput& output) {
  std::printf("%zu raw rows, %zu averaged rows, %zu files written\n", output.raw.size(),
              output.averaged.size(), output.files.size());
  if (!output.errors.empty()) {
    for (const auto& e : output.errors) {
      std::fprintf(stderr, "infeasible cell: algo=%s n_tasks=%d seed=%llu: %s\n",
                   e.algo.c_str(), e.n_tasks, static_cast<unsigned long long>(e.seed),
                   e.message.c_str());
    }
    return kExitInfeasible;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fog/cloud task-scheduling experiments"};
  app.require_subcommand(1);

  CommonArgs run_args, compare_args, sweep_args, sens_args;
  auto* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
  add_common(run_cmd, run_args);

  auto* compare_cmd =
      app.add_subcommand("compare", "compare the algorithms across task counts");
  add_common(compare_cmd, compare_args);

  auto* sweep_cmd =
      app.add_subcommand("sweep-gwo", "sweep the optimizer parameter grid at N=50");
  add_common(sweep_cmd, sweep_args);

  auto* sens_cmd =
      app.add_subcommand("sensitivity", "vary fog node counts, plus the ablation");
  add_common(sens_cmd, sens_args);

  CommonArgs montage_args;
  int montage_scale = 1;
  bool montage_run = false;
  auto* montage_cmd = app.add_subcommand("montage", "export the Montage workload");
  add_common(montage_cmd, montage_args);
  montage_cmd->add_option("--scale", montage_scale, "divide each type count by this factor")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  montage_cmd->add_flag("--run", montage_run, "also schedule it with gwo/random/met");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) {
      const auto config = make_config(run_args);
      return report(vfc::experiment::run_experiment(config, run_args.out_dir, run_args.jobs));
    }

    if (*compare_cmd) {
      auto config = make_config(compare_args);
      return report(
          vfc::experiment::run_experiment(config, compare_args.out_dir, compare_args.jobs));
    }

    if (*sweep_cmd) {
      auto config = make_config(sweep_args);
      if (sweep_args.config_path.empty()) {
        config.algorithms = {"gwo"};
        config.workload.n_tasks = {50};
        config.grid.search_agents = {4, 5, 20, 50, 70};
        config.grid.a0 = {1.0, 2.0, 3.0};
        config.grid.iterations = {50, 100, 150, 200};
      }
      return report(
          vfc::experiment::run_experiment(config, sweep_args.out_dir, sweep_args.jobs));
    }

    if (*sens_cmd) {
      auto config = make_config(sens_args);
      if (sens_args.config_path.empty()) config.workload.n_tasks = {10, 50, 100};
      return report(
          vfc::experiment::sensitivity_fog_nodes(config, sens_args.out_dir, sens_args.jobs));
    }

    if (*montage_cmd) {
      auto config = make_config(montage_args);
      config.workload.kind = vfc::experiment::WorkloadSource::Kind::Montage;
      config.workload.montage_scale = montage_scale;

      std::filesystem::create_directories(montage_args.out_dir);
      const auto workload =
          vfc::montage_workload(montage_scale, config.workload.montage_cores);
      const auto path = std::filesystem::path(montage_args.out_dir) / "montage.json";
      vfc::write_workload(workload, path);
      std::printf("wrote %zu tasks to %s\n", workload.size(), path.string().c_str());

      if (montage_run) {
        if (montage_args.algos.empty()) config.algorithms = {"gwo", "random", "met"};
        return report(vfc::experiment::run_experiment(config, montage_args.out_dir,
                                                      montage_args.jobs));
      }
      return kExitOk;
    }
  } catch (const vfc::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const vfc::ParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const vfc::InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
