#include "berezin/harness.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "berezin/serialize.hpp"

namespace berezin {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << text;
  if (!os) throw IoError("write failed: " + path.string());
}

}  // namespace

CampaignSummary run_suite(const RunConfig& cfg) {
  const SpaceSpec space = make_space(cfg.kind, cfg.dim, std::max(cfg.r_max, 0.995));
  const GridEval ev(space, make_grid(cfg.radial, cfg.angular, cfg.r_max,
                                     RefineConfig{cfg.refine_rounds, cfg.refine_shrink}));

  const fs::path out(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(out / "reports", ec);
  fs::create_directories(out / "instances", ec);
  if (ec) throw IoError("cannot create output directory: " + (out / "reports").string());

  CampaignSummary summary;
  nlohmann::json timing = nlohmann::json::object();
  double total_ms = 0.0;

  CampaignOptions opts;
  opts.trials = cfg.trials;
  opts.seed = cfg.seed;
  opts.tol_override = cfg.tol;
  opts.jobs = cfg.jobs;

  for (const std::string& id : cfg.suite) {
    CampaignResult result = run_campaign(id, ev, opts);

    nlohmann::json reports = nlohmann::json::array();
    for (std::size_t k = 0; k < result.trials.size(); ++k) {
      TrialResult& t = result.trials[k];
      if (!t.report.pass && !t.report.vacuous) {
        const std::string stem = id + "_trial" + std::to_string(k);
        const fs::path a_path = out / "instances" / (stem + "_A.json");
        save_operator(t.a, a_path);
        t.report.instance_a = "instances/" + stem + "_A.json";
        if (t.b) {
          const fs::path b_path = out / "instances" / (stem + "_B.json");
          save_operator(*t.b, b_path);
          t.report.instance_b = "instances/" + stem + "_B.json";
        }
      }
      reports.push_back(report_to_json(t.report));
    }
    write_text(out / "reports" / (id + ".json"), reports.dump(1) + "\n");

    timing[id] = result.stats.wall_ms;
    total_ms += result.stats.wall_ms;
    if (result.stats.vacuous * 2 > result.stats.trials) summary.config_ok = false;
    if (result.stats.failures > 0) summary.overall_pass = false;
    summary.checks.push_back(std::move(result.stats));
  }

  summary.repro = reproduce_reference_values();
  for (const ReproTarget& t : summary.repro)
    if (!t.pass) summary.overall_pass = false;
  if (!summary.config_ok) summary.overall_pass = false;

  timing["total_ms"] = total_ms;
  write_text(out / "summary.json", summary_to_json(cfg, summary).dump(1) + "\n");
  write_text(out / "timing.json", timing.dump(1) + "\n");
  return summary;
}

int exit_code_for(const CampaignSummary& summary) {
  return summary.overall_pass ? 0 : 1;
}

nlohmann::json summary_to_json(const RunConfig& cfg, const CampaignSummary& summary) {
  nlohmann::json j;
  j["config"] = {{"space", to_string(cfg.kind)},
                 {"dim", cfg.dim},
                 {"radial", cfg.radial},
                 {"angular", cfg.angular},
                 {"r_max", cfg.r_max},
                 {"refine_rounds", cfg.refine_rounds},
                 {"refine_shrink", cfg.refine_shrink},
                 {"trials", cfg.trials},
                 {"seed", cfg.seed},
                 {"tol", cfg.tol ? nlohmann::json(*cfg.tol) : nlohmann::json()},
                 {"suite", cfg.suite}};
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckStats& s : summary.checks)
    checks.push_back({{"check_id", s.check_id},
                      {"trials", s.trials},
                      {"passes", s.passes},
                      {"vacuous", s.vacuous},
                      {"failures", s.failures},
                      {"min_slack", s.min_slack},
                      {"max_slack", s.max_slack}});
  j["checks"] = std::move(checks);
  nlohmann::json repro = nlohmann::json::array();
  for (const ReproTarget& t : summary.repro)
    repro.push_back({{"name", t.name},
                     {"expected", t.expected},
                     {"computed", t.computed},
                     {"tolerance", t.tolerance},
                     {"pass", t.pass}});
  j["repro"] = std::move(repro);
  j["config_ok"] = summary.config_ok;
  j["overall_pass"] = summary.overall_pass;
  return j;
}

void print_summary(std::ostream& os, const CampaignSummary& summary) {
  char buf[256];
  os << "check              trials  pass  vac  fail   min_slack      wall_ms\n";
  for (const CheckStats& s : summary.checks) {
    std::snprintf(buf, sizeof(buf), "%-18s %6d %5d %4d %5d  %10.3e %10.1f\n",
                  s.check_id.c_str(), s.trials, s.passes, s.vacuous, s.failures,
                  s.min_slack, s.wall_ms);
    os << buf;
  }
  os << "\nreproduction targets\n";
  for (const ReproTarget& t : summary.repro) {
    std::snprintf(buf, sizeof(buf), "  [%s] %-55s expected %.8g computed %.8g (tol %.1e)\n",
                  t.pass ? "PASS" : "FAIL", t.name.c_str(), t.expected, t.computed,
                  t.tolerance);
    os << buf;
  }
  os << "\nvacuity budget: " << (summary.config_ok ? "ok" : "VIOLATED (>50% vacuous trials)")
     << "\noverall: " << (summary.overall_pass ? "PASS" : "FAIL") << "\n";
}

}  // namespace berezin
