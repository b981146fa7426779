#pragma once

#include <json.hpp>

#include "berezin/campaign.hpp"
#include "berezin/config.hpp"

namespace berezin {

struct CampaignSummary {
  std::vector<CheckStats> checks;
  std::vector<ReproTarget> repro;
  bool config_ok = true;     // no checker exceeded the 50% vacuity budget
  bool overall_pass = true;  // no non-vacuous failure, all repro targets pass
};

/// Execute the selected checks plus the reproduction table, write per-trial
/// reports, failing instances, summary.json and timing.json under
/// cfg.out_dir. Timing lives only in timing.json so every other artifact is
/// byte-deterministic for a fixed config.
CampaignSummary run_suite(const RunConfig& cfg);

/// 0 clean, 1 any non-vacuous failure / vacuity-budget violation / failed
/// reproduction target.
int exit_code_for(const CampaignSummary& summary);

nlohmann::json summary_to_json(const RunConfig& cfg, const CampaignSummary& summary);

void print_summary(std::ostream& os, const CampaignSummary& summary);

}  // namespace berezin
