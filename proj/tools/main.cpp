#include "rtsgs/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
  using namespace rtsgs::cli;

  CLI::App app{"Two-sided Gram-Schmidt biorthogonalization, sketched and deterministic"};
  std::string command, config_path;
  bool no_timing = false;
  std::map<std::string, std::string> flags;

  std::string all_commands;
  for (const auto& c : commands()) all_commands += (all_commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "One of: " + all_commands)->required();
  app.add_option("--config", config_path, "File of key = value lines; flags override it");
  app.add_flag("--no-timing", no_timing, "Report time_s as 0 so table output is byte-stable");

  const std::pair<const char*, const char*> keys[] = {
      {"n", "Ambient dimension"},
      {"m", "Number of columns or Lanczos steps"},
      {"s", "Sketch dimension"},
      {"zeta", "Nonzeros per column of the sparse sign sketch"},
      {"variant", "CGS, MGS or CGS_O"},
      {"passes", "Projection passes (1-3)"},
      {"sketch", "sparse_sign, gaussian, identity (fig1 also: all)"},
      {"scaling", "Sparse sign scaling: standard or paper_literal"},
      {"seed", "Random seed"},
      {"precision", "double or mixed"},
      {"input", "Matrix Market input (A, or X for biortho)"},
      {"input-y", "Matrix Market Y for biortho"},
      {"out", "CSV output path (default stdout)"},
      {"matrix", "Generated inputs for biortho: ill or gaussian"},
      {"trials", "Monte Carlo trials for fig1"},
      {"ritz", "Number of Ritz pairs to report"},
  };
  for (const auto& [key, help] : keys) {
    std::string k = key;
    app.add_option_function<std::string>("--" + k, [&flags, k](const std::string& v) { flags[k] = v; }, help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) load_config_file(cfg, config_path);
    cfg.command = command;
    for (const auto& [k, v] : flags) apply_setting(cfg, k, v);
    if (no_timing) cfg.timing = false;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  return run(cfg, std::cout, std::cerr);
}
