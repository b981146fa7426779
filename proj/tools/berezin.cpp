// Command-line front end: seeded inequality campaigns, closed-form
// reproduction, convergence studies and symbol-field export.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "berezin/harness.hpp"
#include "berezin/rng.hpp"
#include "berezin/serialize.hpp"

namespace {

using namespace berezin;

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  if (out.empty()) throw ConfigError("empty list '" + csv + "'");
  return out;
}

int run_command(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  validate_config(cfg);
  const CampaignSummary summary = run_suite(cfg);
  print_summary(std::cout, summary);
  std::cout << "outputs written to " << cfg.out_dir << "/\n";
  return exit_code_for(summary);
}

int reproduce_command(const std::string& out_dir) {
  const std::vector<ReproTarget> targets = reproduce_reference_values();
  bool all_pass = true;
  char buf[256];
  for (const ReproTarget& t : targets) {
    std::snprintf(buf, sizeof(buf), "[%s] %-55s expected %.8g computed %.8g (tol %.1e)\n",
                  t.pass ? "PASS" : "FAIL", t.name.c_str(), t.expected, t.computed,
                  t.tolerance);
    std::cout << buf;
    all_pass = all_pass && t.pass;
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    nlohmann::json j = nlohmann::json::array();
    for (const ReproTarget& t : targets)
      j.push_back({{"name", t.name},
                   {"expected", t.expected},
                   {"computed", t.computed},
                   {"tolerance", t.tolerance},
                   {"pass", t.pass}});
    std::ofstream os(std::filesystem::path(out_dir) / "reproduction.json");
    if (!os) throw IoError("cannot open for writing: " + out_dir + "/reproduction.json");
    os << j.dump(1) << '\n';
  }
  return all_pass ? 0 : 1;
}

OperatorMatrix named_operator(const std::string& name, const SpaceSpec& space,
                              std::uint64_t seed) {
  if (name == "example36") return example36_operator(space);
  if (name == "shift") return shift(space);
  if (name == "identity") return identity(space);
  if (name == "random") return random_operator(space, derive_seed(seed, "field", 0), 1.0);
  throw ConfigError("unknown operator '" + name +
                    "' (known: example36, shift, identity, random)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berezin-transform operator toolkit"};
  app.require_subcommand(1);

  // run ----------------------------------------------------------------
  // Flags land in their own locals; assembly order is defaults, then the
  // config file, then any flag actually present on the command line.
  std::string config_path;
  std::string space_name = "hardy";
  std::string grid_token = "64x128";
  std::string suite_csv = "all";
  int dim_flag = 64, rounds_flag = 3, trials_flag = 100, jobs_flag = 1;
  double rmax_flag = 0.995, shrink_flag = 0.25, tol_flag = 0.0;
  std::uint64_t seed_flag = 42;
  std::string out_flag = "out";

  CLI::App* run = app.add_subcommand("run", "execute seeded inequality campaigns");
  run->add_option("--config", config_path,
                  "flat INI config file (flags override file values)");
  auto* space_opt = run->add_option("--space", space_name, "hardy | bergman")
                        ->capture_default_str();
  auto* dim_opt = run->add_option("--dim", dim_flag, "model dimension (>= 2)")
                      ->capture_default_str();
  auto* grid_opt = run->add_option("--grid", grid_token, "disk grid RADIALxANGULAR")
                       ->capture_default_str();
  auto* rmax_opt = run->add_option("--rmax", rmax_flag, "grid radius cap in (0, 1)")
                       ->capture_default_str();
  auto* rounds_opt = run->add_option("--rounds", rounds_flag, "refinement rounds")
                         ->capture_default_str();
  auto* shrink_opt = run->add_option("--shrink", shrink_flag, "refinement shrink factor")
                         ->capture_default_str();
  auto* suite_opt = run->add_option("--suite", suite_csv, "'all' or comma list of check ids")
                        ->capture_default_str();
  auto* trials_opt = run->add_option("--trials", trials_flag, "trials per check")
                         ->capture_default_str();
  auto* seed_opt = run->add_option("--seed", seed_flag, "campaign master seed")
                       ->capture_default_str();
  auto* tol_opt = run->add_option("--tol", tol_flag,
                                  "override every checker's slack tolerance");
  auto* jobs_opt = run->add_option("--jobs", jobs_flag, "concurrent trial workers")
                       ->capture_default_str();
  auto* out_opt = run->add_option("--out", out_flag, "output directory")
                      ->capture_default_str();

  // reproduce ------------------------------------------------------------
  std::string repro_out;
  CLI::App* repro = app.add_subcommand("reproduce", "desk-scale closed-form reference reproduction");
  repro->add_option("--out", repro_out, "directory for reproduction.json (optional)");

  // converge -------------------------------------------------------------
  std::string dims_csv = "16,32,64,128";
  std::string grids_csv = "32x64,64x128";
  std::string conv_space = "hardy";
  std::string conv_out;
  double conv_rmax = 0.995;
  std::uint64_t conv_seed = 42;
  CLI::App* conv = app.add_subcommand("converge", "model/grid convergence study (CSV)");
  conv->add_option("--dims", dims_csv, "comma list of dimensions")->capture_default_str();
  conv->add_option("--grids", grids_csv, "comma list of RADIALxANGULAR grids")
      ->capture_default_str();
  conv->add_option("--space", conv_space, "hardy | bergman")->capture_default_str();
  conv->add_option("--rmax", conv_rmax, "grid radius cap")->capture_default_str();
  conv->add_option("--seed", conv_seed, "seed for the random study operator")
      ->capture_default_str();
  conv->add_option("--out", conv_out, "CSV output path (stdout if omitted)");

  // field ------------------------------------------------------------------
  std::string field_op = "example36";
  std::string field_out;
  std::string field_space = "hardy";
  std::string field_grid = "64x128";
  int field_dim = 128;
  double field_rmax = 0.995;
  std::uint64_t field_seed = 42;
  CLI::App* field = app.add_subcommand("field", "symbol-field CSV export");
  field->add_option("--op", field_op, "example36 | shift | identity | random")
      ->capture_default_str();
  field->add_option("--out", field_out, "CSV output path (stdout if omitted)");
  field->add_option("--space", field_space, "hardy | bergman")->capture_default_str();
  field->add_option("--dim", field_dim, "model dimension")->capture_default_str();
  field->add_option("--grid", field_grid, "disk grid RADIALxANGULAR")->capture_default_str();
  field->add_option("--rmax", field_rmax, "grid radius cap")->capture_default_str();
  field->add_option("--seed", field_seed, "seed for --op random")->capture_default_str();

  try {
    app.parse(argc, argv);

    if (run->parsed()) {
      RunConfig cfg;
      cfg.suite = resolve_suite("all");
      if (!config_path.empty()) apply_config_file(cfg, config_path);
      if (space_opt->count() > 0) cfg.kind = space_kind_from_string(space_name);
      if (dim_opt->count() > 0) cfg.dim = dim_flag;
      if (grid_opt->count() > 0) parse_grid_token(grid_token, cfg.radial, cfg.angular);
      if (rmax_opt->count() > 0) cfg.r_max = rmax_flag;
      if (rounds_opt->count() > 0) cfg.refine_rounds = rounds_flag;
      if (shrink_opt->count() > 0) cfg.refine_shrink = shrink_flag;
      if (suite_opt->count() > 0) cfg.suite = resolve_suite(suite_csv);
      if (trials_opt->count() > 0) cfg.trials = trials_flag;
      if (seed_opt->count() > 0) cfg.seed = seed_flag;
      if (tol_opt->count() > 0) cfg.tol = tol_flag;
      if (jobs_opt->count() > 0) cfg.jobs = jobs_flag;
      if (out_opt->count() > 0) cfg.out_dir = out_flag;
      return run_command(cfg);
    }
    if (repro->parsed()) return reproduce_command(repro_out);
    if (conv->parsed()) {
      const std::vector<int> dims = parse_int_list(dims_csv);
      std::vector<std::pair<int, int>> grids;
      std::stringstream ss(grids_csv);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) {
          int radial = 0, angular = 0;
          parse_grid_token(item, radial, angular);
          grids.emplace_back(radial, angular);
        }
      if (grids.empty()) throw ConfigError("no grids given");
      const auto rows = convergence_study(space_kind_from_string(conv_space), dims,
                                          grids, conv_rmax, conv_seed);
      if (conv_out.empty()) {
        write_convergence_csv(std::cout, rows);
      } else {
        std::ofstream os(conv_out);
        if (!os) throw IoError("cannot open for writing: " + conv_out);
        write_convergence_csv(os, rows);
      }
      return 0;
    }
    if (field->parsed()) {
      const SpaceSpec space =
          make_space(space_kind_from_string(field_space), field_dim,
                     std::max(field_rmax, 0.995));
      int radial = 0, angular = 0;
      parse_grid_token(field_grid, radial, angular);
      const GridEval ev(space, make_grid(radial, angular, field_rmax));
      const OperatorMatrix op = named_operator(field_op, space, field_seed);
      const std::vector<PointEval> rows = symbol_field(op, ev);
      if (field_out.empty()) {
        write_symbol_field_csv(std::cout, rows);
      } else {
        std::ofstream os(field_out);
        if (!os) throw IoError("cannot open for writing: " + field_out);
        write_symbol_field_csv(os, rows);
      }
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
