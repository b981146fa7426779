#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "berezin/checks.hpp"

namespace berezin {

/// Per-checker campaign statistics. passes + vacuous + failures == trials.
struct CheckStats {
  std::string check_id;
  int trials = 0;
  int passes = 0;
  int vacuous = 0;
  int failures = 0;
  double min_slack = 0.0;  // over non-vacuous trials
  double max_slack = 0.0;
  double wall_ms = 0.0;
};

struct TrialResult {
  InequalityReport report;
  OperatorMatrix a;
  std::optional<OperatorMatrix> b;  // the second operator, when one exists
};

struct CampaignOptions {
  int trials = 100;
  std::uint64_t seed = 42;
  std::optional<double> tol_override;  // per-checker defaults otherwise
  int jobs = 1;
};

/// All checker ids the campaign runner knows, in canonical order.
const std::vector<std::string>& known_check_ids();

/// Slack tolerance a checker uses when none is forced: 1e-10 for thm_3_1,
/// 1e-9 for basic_chain, 1e-8 otherwise.
double default_tol_for(const std::string& check_id);

/// Generate the tailored instance for one trial and run its checker. The
/// trial seed is derived as derive_seed(master, check_id, trial).
TrialResult run_trial(const std::string& check_id, const GridEval& ev,
                      std::uint64_t master_seed, int trial,
                      std::optional<double> tol_override = std::nullopt);

struct CampaignResult {
  CheckStats stats;
  std::vector<TrialResult> trials;  // in trial order
};

CampaignResult run_campaign(const std::string& check_id, const GridEval& ev,
                            const CampaignOptions& opts);

// Paper-value reproduction ---------------------------------------------------

struct ReproTarget {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Fixed desk-scale reproduction study (Hardy dims 64 and 128, grid 64x128,
/// r_max 0.995), independent of the run configuration.
std::vector<ReproTarget> reproduce_reference_values();

// Convergence study -----------------------------------------------------------

struct ConvergenceRow {
  std::string op;
  int dim = 0;
  int radial = 0;
  int angular = 0;
  double ber = 0.0;
  double bernorm = 0.0;
  double num_radius = 0.0;
  double op_norm = 0.0;
};

std::vector<ConvergenceRow> convergence_study(SpaceKind kind, std::span<const int> dims,
                                              std::span<const std::pair<int, int>> grids,
                                              double r_max, std::uint64_t seed);

void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows);

}  // namespace berezin
