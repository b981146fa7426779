#include "berezin/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace berezin {

void DiskGrid::node_polar(int idx, double& r, double& theta) const {
  if (idx == 0) {
    r = 0.0;
    theta = 0.0;
    return;
  }
  const int j = 1 + (idx - 1) / angular;
  const int m = (idx - 1) % angular;
  r = radial[static_cast<std::size_t>(j)];
  theta = 2.0 * std::numbers::pi * m / angular;
}

Complex DiskGrid::node(int idx) const {
  double r, theta;
  node_polar(idx, r, theta);
  return {r * std::cos(theta), r * std::sin(theta)};
}

namespace {

void validate(const DiskGrid& g) {
  if (!(g.r_max > 0.0 && g.r_max < 1.0))
    throw ConfigError("grid r_max must lie in (0, 1), got " + std::to_string(g.r_max));
  if (g.angular < 1) throw ConfigError("grid needs at least one angular node");
  if (g.radial.empty() || g.radial.front() != 0.0)
    throw ConfigError("grid radial nodes must start at 0 (exactness anchor)");
  for (std::size_t i = 0; i < g.radial.size(); ++i) {
    const double r = g.radial[i];
    if (!(r >= 0.0 && r <= g.r_max))
      throw ConfigError("grid radial node " + std::to_string(r) + " outside [0, r_max]");
    if (i > 0 && !(r > g.radial[i - 1]))
      throw ConfigError("grid radial nodes must be strictly increasing");
  }
  if (g.refine.rounds < 0) throw ConfigError("refinement rounds must be >= 0");
  if (!(g.refine.shrink > 0.0 && g.refine.shrink < 1.0))
    throw ConfigError("refinement shrink factor must lie in (0, 1)");
}

}  // namespace

DiskGrid make_grid(int radial_count, int angular_count, double r_max,
                   RefineConfig refine) {
  if (radial_count < 2) throw ConfigError("grid needs at least two radial nodes");
  DiskGrid g;
  g.angular = angular_count;
  g.r_max = r_max;
  g.refine = refine;
  g.radial.resize(static_cast<std::size_t>(radial_count));
  for (int j = 0; j < radial_count; ++j) {
    const double t = std::numbers::pi * j / (radial_count - 1);
    g.radial[static_cast<std::size_t>(j)] = r_max * (1.0 - std::cos(t)) / 2.0;
  }
  g.radial.front() = 0.0;
  g.radial.back() = r_max;
  validate(g);
  return g;
}

DiskGrid make_grid(std::vector<double> radial_nodes, int angular_count, double r_max,
                   RefineConfig refine) {
  std::sort(radial_nodes.begin(), radial_nodes.end());
  DiskGrid g;
  g.radial = std::move(radial_nodes);
  g.angular = angular_count;
  g.r_max = r_max;
  g.refine = refine;
  validate(g);
  return g;
}

}  // namespace berezin
