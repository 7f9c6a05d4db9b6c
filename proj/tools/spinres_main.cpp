// spinres <command> --config <path> [--out <path>] [--threads N]
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "spinres/errors.hpp"
#include "spinres/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spin-resonance simulation and parameter extraction"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  int threads = 1;
  for (const char* name : {"simulate", "resonance", "fit", "jt", "quadrupole", "sensitivity"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_path, "output file (default: config output_path or stdout)");
    sub->add_option("--threads", threads, "worker threads for map synthesis")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  spinres::RunConfig cfg;
  try {
    cfg = spinres::load_config(config_path);
    if (spinres::to_string(cfg.command) != command)
      throw spinres::ConfigError("command", "config is for '" + std::string(spinres::to_string(cfg.command)) +
                                                "' but '" + command + "' was requested");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  spinres::RunResult result;
  try {
    result = spinres::run(cfg, {threads});
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  if (out_path.empty() && cfg.output_path) out_path = *cfg.output_path;
  if (out_path.empty()) {
    std::cout << result.artifact;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 3;
  }
  out << result.artifact;
  std::cout << result.summary;
  return 0;
}
