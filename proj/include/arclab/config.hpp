#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arclab/model.hpp"
#include "arclab/monitors.hpp"
#include "arclab/regime.hpp"
#include "arclab/solver.hpp"

namespace arclab {

// Configuration file problem: unknown key, missing block, bad value.
// Commands report it and exit with the usage code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputConfig {
  std::string dir = ".";
  std::vector<double> snapshot_times;
};

struct SweepConfig {
  SweepAxis axis1, axis2; // axis2.param may be "" (single-axis sweep)
};

// Parsed configuration file.  Blocks are optional at parse time; each
// command checks for the blocks it needs.  `raw` keeps the resolved JSON
// (defaults filled in) for reproducibility headers.
struct RunConfig {
  std::optional<ModelParams> model;
  std::optional<Grid> grid;
  std::optional<ProfileSpec> u0, v0, w0;
  StepControl step;
  bool has_step = false;
  MonitorConfig monitor;
  bool monitor_from_certificate = false;
  OutputConfig output;
  std::optional<SweepConfig> sweep;
  std::string raw; // resolved config as sorted-key JSON text
};

// Strict-schema load: unknown keys anywhere are errors naming the key, and
// every present block must validate through its module.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

} // namespace arclab
