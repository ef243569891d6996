#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "certopt/runner.hpp"

namespace {

struct CliOptions {
  certopt::RunConfig config;
  std::string mode = "hybrid";
  std::string format = "text";
  std::string rana_syntax = "rewritten";
  int population = 0;
  double weight = 0.0;
  double crossover = -1.0;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("-f,--function", opts.config.function,
                  "michalewicz | sine_envelope | shekel | egg_holder | rana | keane");
  cmd->add_option("-n,--dimension", opts.config.n, "problem dimension (>= 2)");
  cmd->add_option("-e,--epsilon", opts.config.epsilon,
                  "certification precision (default 1e-6)");
  cmd->add_option("--np", opts.population, "DE population size");
  cmd->add_option("--w", opts.weight, "DE weighting factor");
  cmd->add_option("--cr", opts.crossover, "DE crossover rate");
  cmd->add_option("--seed", opts.config.seed, "RNG seed");
  cmd->add_option("--rana-syntax", opts.rana_syntax, "original | rewritten");
  cmd->add_option("--time-limit", opts.config.time_limit_s,
                  "wall-clock limit in seconds (default 120)");
  cmd->add_option("--generations", opts.config.de_generations,
                  "generation budget for de-only mode");
  cmd->add_option("--data-dir", opts.config.data_dir,
                  "directory with shekel_foxholes.txt and reference_minima.csv");
}

bool finalize_config(CliOptions& opts) {
  auto mode = certopt::parse_run_mode(opts.mode);
  if (!mode) {
    std::cerr << "error: unknown mode '" << opts.mode << "'\n";
    return false;
  }
  opts.config.mode = *mode;
  auto format = certopt::parse_output_format(opts.format);
  if (!format) {
    std::cerr << "error: unknown format '" << opts.format << "'\n";
    return false;
  }
  opts.config.format = *format;
  if (opts.rana_syntax == "original") {
    opts.config.rana_syntax = certopt::RanaSyntax::Original;
  } else if (opts.rana_syntax == "rewritten") {
    opts.config.rana_syntax = certopt::RanaSyntax::Rewritten;
  } else {
    std::cerr << "error: unknown rana syntax '" << opts.rana_syntax << "'\n";
    return false;
  }
  if (opts.population > 0) opts.config.population_size = opts.population;
  if (opts.weight > 0) opts.config.weight = opts.weight;
  if (opts.crossover >= 0) opts.config.crossover_rate = opts.crossover;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certifying global optimizer: interval branch-and-contract "
               "cooperating with differential evolution"};
  app.require_subcommand(1);

  CliOptions run_opts;
  CLI::App* run_cmd = app.add_subcommand(
      "run", "Solve one instance and print the certified result");
  add_common_options(run_cmd, run_opts);
  run_cmd->add_option("-m,--mode", run_opts.mode,
                      "hybrid | ibc-only | de-only | deterministic-interleaved");
  run_cmd->add_option("-o,--format", run_opts.format, "text | json-lines | csv");
  run_cmd->add_flag("--progress", run_opts.config.stream_progress,
                    "stream per-step progress records (json-lines)");

  CliOptions table_opts;
  std::vector<std::string> instances;
  CLI::App* table_cmd = app.add_subcommand(
      "table", "Run several instances and print a summary table");
  add_common_options(table_cmd, table_opts);
  table_cmd->add_option("-m,--mode", table_opts.mode, "execution mode");
  table_cmd
      ->add_option("-i,--instance", instances,
                   "instance as function:n (repeatable)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (!finalize_config(run_opts)) return 1;
      return certopt::run(run_opts.config, std::cout);
    }
    if (table_cmd->parsed()) {
      if (!finalize_config(table_opts)) return 1;
      std::vector<certopt::RunOutcome> outcomes;
      for (const std::string& inst : instances) {
        auto colon = inst.find(':');
        if (colon == std::string::npos) {
          std::cerr << "error: instance must be function:n, got '" << inst
                    << "'\n";
          return 1;
        }
        certopt::RunConfig config = table_opts.config;
        config.function = inst.substr(0, colon);
        config.n = std::stoi(inst.substr(colon + 1));
        certopt::CertifiedResult result = certopt::execute(config);
        outcomes.push_back({std::move(config), std::move(result)});
      }
      std::cout << certopt::format_table(outcomes);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
