#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "molinfer/pipeline/commands.hpp"
#include "molinfer/pipeline/config.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  long long seed = -1;
  double time_limit = -1;
  std::string solver;
};

molinfer::pipeline::PipelineConfig resolve(const CommonArgs& args) {
  auto file = args.config_path.empty()
                  ? molinfer::pipeline::ConfigFile{}
                  : molinfer::pipeline::ConfigFile::load(args.config_path);
  auto cfg = molinfer::pipeline::PipelineConfig::from_file(file);
  if (args.seed >= 0) cfg.seed = static_cast<uint64_t>(args.seed);
  if (args.time_limit >= 0) cfg.time_limit = args.time_limit;
  if (!args.solver.empty()) cfg.solver_override = args.solver;
  return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "configuration file")
      ->required();
  cmd->add_option("--seed", args.seed, "override train.seed");
  cmd->add_option("--time-limit", args.time_limit,
                  "override infer.time_limit (seconds)");
  cmd->add_option("--solver", args.solver,
                  "override MILP solver command (executable plus argument "
                  "template with {lp} {sol} {timelimit})");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse molecular design: featurize, train, infer, search"};
  app.require_subcommand(1);

  CommonArgs args;
  auto* featurize = app.add_subcommand(
      "featurize", "build the descriptor registry and feature matrices");
  auto* train = app.add_subcommand(
      "train", "cross-validate and fit the prediction function");
  auto* infer = app.add_subcommand(
      "infer", "solve the combined MILP for a target interval");
  auto* grid = app.add_subcommand(
      "grid-search", "search the neighbor grids around the seed solution");
  auto* eval = app.add_subcommand("eval", "report model R^2 on the dataset");
  for (auto* cmd : {featurize, train, infer, grid, eval}) {
    add_common(cmd, args);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = resolve(args);
    if (featurize->parsed()) return molinfer::pipeline::cmd_featurize(cfg);
    if (train->parsed()) return molinfer::pipeline::cmd_train(cfg);
    if (infer->parsed()) return molinfer::pipeline::cmd_infer(cfg);
    if (grid->parsed()) return molinfer::pipeline::cmd_grid_search(cfg);
    if (eval->parsed()) return molinfer::pipeline::cmd_eval(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return molinfer::pipeline::kExitError;
  }
  return molinfer::pipeline::kExitError;
}
