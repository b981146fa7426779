#pragma once

#include <complex>
#include <vector>

#include "berezin/errors.hpp"
#include "berezin/space.hpp"

namespace berezin {

struct RefineConfig {
  int rounds = 3;
  double shrink = 0.25;
};

/// Finite polar sample set of the disk. Radial node 0 is always present and
/// contributes a single node; every other radius carries `angular` nodes
/// theta_m = 2 pi m / angular. Node order is radial-major, then angular.
struct DiskGrid {
  std::vector<double> radial;  // ascending, radial[0] == 0, all <= r_max
  int angular = 128;
  double r_max = 0.995;
  RefineConfig refine;

  int node_count() const {
    return 1 + static_cast<int>(radial.size() - 1) * angular;
  }

  /// Polar coordinates of node `idx`.
  void node_polar(int idx, double& r, double& theta) const;

  Complex node(int idx) const;
};

/// Chebyshev-spaced radii on [0, r_max] (endpoints included).
DiskGrid make_grid(int radial_count, int angular_count, double r_max = 0.995,
                   RefineConfig refine = {});

/// Grid over caller-supplied radii; must include 0 and stay within [0, r_max].
DiskGrid make_grid(std::vector<double> radial_nodes, int angular_count, double r_max,
                   RefineConfig refine = {});

}  // namespace berezin
