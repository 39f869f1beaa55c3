#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mgrkit/cli.hpp"
#include "mgrkit/solver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mgrkit: maximal generalised roundness of finite metric spaces"};
  app.require_subcommand(1);

  mgrkit::RunOptions opts;
  std::string method = "eig-gram";

  const auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--method", method, "eig-gram, det-cm, det-gram, or sanchez")
        ->capture_default_str();
    cmd->add_option("--p-min", opts.config.p_min, "lower end of the exponent scan")
        ->capture_default_str();
    cmd->add_option("--p-max", opts.config.p_max, "upper end of the exponent scan")
        ->capture_default_str();
    cmd->add_option("--scan-step", opts.config.scan_step, "coarse grid step")
        ->capture_default_str();
    cmd->add_option("--tol", opts.config.tol, "bisection width target")->capture_default_str();
    cmd->add_option("--zero-tol", opts.config.zero_tol, "threshold for treating values as zero")
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads,
                    "worker threads for the grid scan (default: MGRKIT_THREADS or 1)");
  };
  const auto add_input_flags = [&](CLI::App* cmd) {
    cmd->add_option("--input", opts.input_path, "input file")->required();
    cmd->add_option("--format", opts.format, "csv, json, graph, or hamming")
        ->capture_default_str();
    cmd->add_option("--kind", opts.kind, "auto, metric, or semi-metric")->capture_default_str();
    cmd->add_flag("--normalize", opts.normalize, "rescale distances to max 1 before solving");
    cmd->add_flag("--strict", opts.strict, "exit 2 on ambiguous numerical outcomes");
  };
  const auto add_output_flag = [&](CLI::App* cmd) {
    cmd->add_option("--output", opts.output_path, "write the report here instead of stdout");
  };

  CLI::App* compute = app.add_subcommand("compute", "compute the roundness threshold");
  add_input_flags(compute);
  add_solver_flags(compute);
  add_output_flag(compute);
  compute->add_flag("--verify", opts.with_verification,
                    "add the oracle bracket, dichotomy, and identity residuals");

  CLI::App* verify = app.add_subcommand("verify", "compute plus independent verification");
  add_input_flags(verify);
  add_solver_flags(verify);
  add_output_flag(verify);

  CLI::App* suite = app.add_subcommand("identity-suite", "run the randomized identity suites");
  suite->add_option("--trials", opts.trials, "spaces per suite")->capture_default_str();
  suite->add_option("--seed", opts.seed, "corpus seed")->capture_default_str();
  suite->add_option("--threads", opts.threads,
                    "worker threads (default: MGRKIT_THREADS or 1)");
  add_output_flag(suite);

  CLI::App* generate = app.add_subcommand("generate", "emit a generated space as JSON");
  generate->add_option("--family", opts.family,
                       "path_n, cycle_n, complete_n, star_n, random_tree_n, hamming_random, "
                       "random_semimetric, or random_euclidean")
      ->required();
  generate->add_option("--size", opts.size, "main size parameter")->required();
  generate->add_option("--dim", opts.dimension, "dimension for cube or euclidean families");
  generate->add_option("--seed", opts.seed, "generator seed")->capture_default_str();
  add_output_flag(generate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto parsed_method = mgrkit::parse_method(method);
  if (!parsed_method) {
    std::cerr << "unknown method '" << method
              << "' (use eig-gram, det-cm, det-gram, or sanchez)\n";
    return 1;
  }
  opts.config.method = *parsed_method;
  opts.command = app.get_subcommands().front()->get_name();
  return mgrkit::run_command(opts, std::cout, std::cerr);
}
