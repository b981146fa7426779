#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <span>
#include <vector>

#include "berezin/grid.hpp"
#include "berezin/operators.hpp"

namespace berezin {

/// One evaluation of the symbol machinery at a disk point.
struct PointEval {
  Complex lambda{};
  Complex symbol{};               // <A khat, khat>
  double kernel_action_norm = 0;  // ||A khat||
  double defect = 0;              // ||A khat||^2 - |symbol|^2, clamped at 0
};

/// Extrema of |symbol|, ||A khat|| and the defect over one point set. All
/// three are always tracked together so that refinement points discovered for
/// one objective are scored against the others as well (the grid-restricted
/// inequalities need every quantity evaluated over the same sample set).
struct ScanValues {
  double ber = 0.0;
  Complex arg_ber{};
  double bernorm = 0.0;
  Complex arg_bernorm{};
  double min_bernorm = 0.0;  // grid minimum of ||A khat|| (certifies kernel lower bounds)
  Complex arg_min_bernorm{};
  double inf_defect = 0.0;
  Complex arg_inf_defect{};
};

struct BerezinEstimates {
  double ber_grid = 0.0;
  Complex arg_ber{};
  double bernorm_grid = 0.0;
  Complex arg_bernorm{};
  double inf_defect = 0.0;
  Complex arg_inf_defect{};
  bool has_anchors = false;
  double upper_anchor_w = 0.0;     // numerical radius, certified upper bound for ber
  double upper_anchor_norm = 0.0;  // operator norm, certified upper bound for bernorm
};

/// Kernel data of one (space, grid) pair: normalized kernel vectors at every
/// node, cached as columns for batched operator evaluation. Immutable after
/// construction and safe to share across threads.
class GridEval {
 public:
  GridEval(SpaceSpec space, DiskGrid grid);

  const SpaceSpec& space() const { return space_; }
  const DiskGrid& grid() const { return grid_; }
  int node_count() const { return grid_.node_count(); }
  Complex node(int idx) const { return grid_.node(idx); }
  const Eigen::MatrixXcd& kernel_columns() const { return khat_; }

  /// Pointwise evaluation at an arbitrary admissible disk point.
  PointEval at(const Eigen::MatrixXcd& entries, Complex lambda) const;

  /// Extrema over the base grid, deterministic node order, first node wins ties.
  ScanValues scan(const Eigen::MatrixXcd& entries) const;

  /// All rows of the symbol field over the base grid, in node order.
  std::vector<PointEval> field(const Eigen::MatrixXcd& entries) const;

  /// Probe points visited by the shrinking pattern searches that refine each
  /// of the three objectives around its base-grid argument.
  std::vector<Complex> refinement_probes(const Eigen::MatrixXcd& entries,
                                         const ScanValues& base) const;

  /// Fold extra points into previously computed extrema (every point updates
  /// all three objectives).
  void rescore(const Eigen::MatrixXcd& entries, std::span<const Complex> points,
               ScanValues& io) const;

  /// scan + refine + rescore in one call.
  ScanValues refined_scan(const Eigen::MatrixXcd& entries) const;

 private:
  SpaceSpec space_;
  DiskGrid grid_;
  Eigen::MatrixXcd khat_;  // dim x node_count, normalized kernel columns
};

// Named operations ----------------------------------------------------------

Complex berezin_symbol(const OperatorMatrix& a, Complex lambda);

std::vector<PointEval> symbol_field(const OperatorMatrix& a, const GridEval& ev);

/// Grid estimates with refinement and certified upper anchors.
BerezinEstimates berezin_estimates(const OperatorMatrix& a, const GridEval& ev,
                                   bool with_anchors = true);
BerezinEstimates berezin_number(const OperatorMatrix& a, const GridEval& ev);
BerezinEstimates berezin_norm(const OperatorMatrix& a, const GridEval& ev);

/// ||A khat||^2 - |symbol|^2, evaluated both directly and as
/// ||(A - symbol I) khat||^2; the two paths must agree to 1e-10 relative.
double berezin_defect(const OperatorMatrix& a, Complex lambda);

double inf_defect(const OperatorMatrix& a, const GridEval& ev);

struct RadialDefectSample {
  double r = 0.0;
  double defect = 0.0;
  double adjoint_defect = 0.0;
};

/// Defect of A and A* along the ray r e^{i theta}; diagnostic only.
std::vector<RadialDefectSample> radial_defect_profile(const OperatorMatrix& a,
                                                      double theta,
                                                      std::span<const double> r_list);

/// Numerical rank of the sampling map  A  |->  (symbol of A at each point),
/// assembled columnwise from matrix units; threshold 1e-8 of the largest
/// singular value. Requires at least dim^2 points.
int symbol_injectivity_rank(const SpaceSpec& space, std::span<const Complex> points);

/// CSV export of a symbol field: header
/// lambda_re,lambda_im,symbol_re,symbol_im,kernel_action_norm,defect
void write_symbol_field_csv(std::ostream& os, std::span<const PointEval> rows);

}  // namespace berezin
