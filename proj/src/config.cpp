#include "berezin/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "berezin/campaign.hpp"

namespace berezin {

std::vector<std::string> resolve_suite(const std::string& selection) {
  const auto& known = known_check_ids();
  if (selection == "all" || selection.empty())
    return known;
  std::vector<std::string> picked;
  std::stringstream ss(selection);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (std::find(known.begin(), known.end(), item) == known.end()) {
      std::string msg = "unknown check id '" + item + "'; known ids: ";
      for (std::size_t i = 0; i < known.size(); ++i) {
        if (i) msg += ", ";
        msg += known[i];
      }
      throw ConfigError(msg);
    }
    if (std::find(picked.begin(), picked.end(), item) == picked.end())
      picked.push_back(item);
  }
  if (picked.empty()) throw ConfigError("suite selection resolved to no checks");
  // Canonical execution order regardless of how the list was written.
  std::vector<std::string> ordered;
  for (const std::string& id : known)
    if (std::find(picked.begin(), picked.end(), id) != picked.end())
      ordered.push_back(id);
  return ordered;
}

void validate_config(RunConfig& cfg) {
  if (cfg.dim < 2)
    throw ConfigError("dim must be >= 2, got " + std::to_string(cfg.dim));
  if (!(cfg.r_max > 0.0 && cfg.r_max < 1.0))
    throw ConfigError("r_max must lie in (0, 1), got " + std::to_string(cfg.r_max));
  if (cfg.radial < 2)
    throw ConfigError("grid needs at least 2 radial nodes, got " + std::to_string(cfg.radial));
  if (cfg.angular < 1)
    throw ConfigError("grid needs at least 1 angular node, got " + std::to_string(cfg.angular));
  if (cfg.refine_rounds < 0)
    throw ConfigError("refinement rounds must be >= 0");
  if (!(cfg.refine_shrink > 0.0 && cfg.refine_shrink < 1.0))
    throw ConfigError("refinement shrink must lie in (0, 1)");
  if (cfg.trials < 1)
    throw ConfigError("trials must be >= 1, got " + std::to_string(cfg.trials));
  if (cfg.jobs < 1)
    throw ConfigError("jobs must be >= 1, got " + std::to_string(cfg.jobs));
  if (cfg.suite.empty()) cfg.suite = known_check_ids();
}

void parse_grid_token(const std::string& token, int& radial, int& angular) {
  const auto x = token.find('x');
  if (x == std::string::npos)
    throw ConfigError("grid must be RADIALxANGULAR, e.g. 64x128; got '" + token + "'");
  try {
    radial = std::stoi(token.substr(0, x));
    angular = std::stoi(token.substr(x + 1));
  } catch (const std::exception&) {
    throw ConfigError("cannot parse grid token '" + token + "'");
  }
}

namespace {

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse number '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse integer '" + value + "'");
  }
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string text = trimmed(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        " is not key=value: '" + text + "'");
    const std::string key = trimmed(text.substr(0, eq));
    const std::string value = trimmed(text.substr(eq + 1));
    if (key == "space")
      cfg.kind = space_kind_from_string(value);
    else if (key == "dim")
      cfg.dim = static_cast<int>(parse_int(key, value));
    else if (key == "grid")
      parse_grid_token(value, cfg.radial, cfg.angular);
    else if (key == "rmax")
      cfg.r_max = parse_double(key, value);
    else if (key == "rounds")
      cfg.refine_rounds = static_cast<int>(parse_int(key, value));
    else if (key == "shrink")
      cfg.refine_shrink = parse_double(key, value);
    else if (key == "suite")
      cfg.suite = resolve_suite(value);
    else if (key == "trials")
      cfg.trials = static_cast<int>(parse_int(key, value));
    else if (key == "seed")
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "tol")
      cfg.tol = parse_double(key, value);
    else if (key == "jobs")
      cfg.jobs = static_cast<int>(parse_int(key, value));
    else if (key == "out")
      cfg.out_dir = value;
    else
      throw ConfigError("unknown config key '" + key + "' in " + path +
                        " (known: space, dim, grid, rmax, rounds, shrink, suite, "
                        "trials, seed, tol, jobs, out)");
  }
}

}  // namespace berezin
