#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "trilayer/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Wave propagation through a three-layer medium"};
  app.require_subcommand(1);

  trilayer::cli::CommandOptions options;
  std::string config;
  std::uint64_t seed = 0;

  for (const char* name : {"scan", "field", "propagator", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "key = value configuration file or a previous output");
    sub->add_option("--out", options.out_dir, "output directory")->capture_default_str();
    sub->add_option("--threads", options.threads, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", seed, "random seed for verify");
  }
  app.get_subcommand("scan")->description("transmission/reflection probabilities over omega");
  app.get_subcommand("field")->description("packet field f(x, t) on a grid");
  app.get_subcommand("propagator")->description("propagator g(x, x', tau) over tau");
  app.get_subcommand("verify")->description("run the invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : trilayer::cli::kExitConfig;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  if (!config.empty()) options.config_path = config;
  if (chosen->count("--seed") > 0) options.seed = seed;
  return trilayer::cli::run_command(chosen->get_name(), options, std::cerr);
}
