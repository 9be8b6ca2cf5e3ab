#pragma once

#include "aledg/flux.hpp"
#include "aledg/scheme.hpp"

#include <string>
#include <utility>
#include <vector>

namespace aledg {

/// Everything a run needs besides the case definition.
struct RunConfig {
  std::string case_name;
  /// Cells (1D) or blocks along x (2D); 0 keeps the case default.
  int n = 0;
  /// Blocks along y; 0 scales the case default with n.
  int ny = 0;
  std::string mesh_file;
  /// Galilean boost added to the initial x velocity.
  double boost = 0.0;
  /// Negative keeps the case final time.
  double final_time = -1.0;
  FluxSpec flux;
  SchemeConfig scheme;
  std::string output_dir;
  /// Snapshot every `snapshot_interval` steps; 0 writes only the first and last.
  int snapshot_interval = 0;
  int max_steps = 10000000;

  void validate() const;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Recognised keys in `section.key` form.
std::vector<std::string> config_keys();

/// Parses `key = value` lines with `[section]` headers. `#` starts a comment.
Overrides read_config_file(const std::string& path);

/// Applies file entries then flag overrides to the defaults. Keys are either
/// `section.key` or one of the short aliases (case, n, k, cfl, mode, flux,
/// limiter, seed, output). Throws ConfigError naming the offending key.
RunConfig parse_config(const Overrides& file_entries, const Overrides& flags = {});

/// Serialises a config back into the file format.
std::string format_config(const RunConfig& cfg);

}  // namespace aledg
