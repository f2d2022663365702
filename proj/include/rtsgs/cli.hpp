#pragma once

#include "rtsgs/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtsgs::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kIoError = 3, kBreakdown = 4, kFormatError = 5 };

/// Bad command, flag or value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  Index n = 0;  ///< 0 means "command default"
  Index m = 0;
  Index s = 0;
  Index zeta = 0;
  std::string variant;
  int passes = 0;
  std::string sketch;  ///< empty means "command default"
  std::string scaling = "standard";
  std::uint64_t seed = 1;
  std::string precision = "double";
  std::string input_path;
  std::string input_path_y;
  std::string out_path;
  std::string matrix = "ill";  ///< generator for biortho/rbiortho: ill | gaussian
  Index trials = 0;
  Index ritz = 10;
  bool timing = true;
};

const std::vector<std::string>& commands();

/// Sets one key (flag name without dashes) from its textual value.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads `key = value` lines; '#' starts a comment.
void load_config_file(RunConfig& cfg, const std::string& path);

/// Fills command defaults and checks ranges.  Throws ConfigError.
RunConfig resolve(RunConfig cfg);

/// Runs one command.  CSV goes to cfg.out_path, or to `out` when the path
/// is empty; a short summary goes to `log`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Full round-trip decimal form.
std::string format_number(double v);

}  // namespace rtsgs::cli
