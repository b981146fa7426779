#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "berezin/space.hpp"

namespace berezin {

/// Validated run configuration. Flag values override config-file values;
/// defaults are documented in --help.
struct RunConfig {
  SpaceKind kind = SpaceKind::Hardy;
  int dim = 64;
  int radial = 64;
  int angular = 128;
  double r_max = 0.995;
  int refine_rounds = 3;
  double refine_shrink = 0.25;
  std::vector<std::string> suite;  // resolved check ids, canonical order
  int trials = 100;
  std::uint64_t seed = 42;
  std::optional<double> tol;  // overrides every checker's slack tolerance
  int jobs = 1;
  std::string out_dir = "out";
};

/// Validate ranges and resolve the suite selection ("all" or a comma list of
/// check ids; unknown ids are rejected with the full known-id list).
void validate_config(RunConfig& cfg);

/// Expand a suite selection string; throws ConfigError on unknown ids.
std::vector<std::string> resolve_suite(const std::string& selection);

/// Parse a RADIALxANGULAR grid token such as "64x128".
void parse_grid_token(const std::string& token, int& radial, int& angular);

/// Apply a flat INI file (key=value per line, # or ; comments) onto a config.
/// Unknown keys are rejected by name. Keys: space, dim, grid, rmax, rounds,
/// shrink, suite, trials, seed, tol, jobs, out.
void apply_config_file(RunConfig& cfg, const std::string& path);

}  // namespace berezin
