#include "berezin/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include <Eigen/Dense>

namespace berezin {

namespace {

constexpr double kDefectFloor = -1e-12;

double checked_defect(double norm_sq, double sym_abs_sq, Complex lambda) {
  const double d = norm_sq - sym_abs_sq;
  if (d < kDefectFloor)
    throw NumericsError("defect " + std::to_string(d) + " at lambda = (" +
                        std::to_string(lambda.real()) + ", " +
                        std::to_string(lambda.imag()) +
                        ") is negative beyond rounding");
  return std::max(d, 0.0);
}

}  // namespace

GridEval::GridEval(SpaceSpec space, DiskGrid grid)
    : space_(space), grid_(std::move(grid)) {
  if (grid_.r_max > space_.r_max)
    throw ConfigError("grid r_max " + std::to_string(grid_.r_max) +
                      " exceeds the space evaluation cap " + std::to_string(space_.r_max));
  const int k = grid_.node_count();
  khat_.resize(space_.dim, k);
  for (int idx = 0; idx < k; ++idx) {
    const KernelVector kv = normalize(kernel_vector(space_, grid_.node(idx)));
    khat_.col(idx) = kv.coeffs;
  }
}

PointEval GridEval::at(const Eigen::MatrixXcd& entries, Complex lambda) const {
  const KernelVector kv = normalize(kernel_vector(space_, lambda));
  const Eigen::VectorXcd ak = entries * kv.coeffs;
  PointEval pe;
  pe.lambda = lambda;
  pe.symbol = kv.coeffs.dot(ak);  // <A khat, khat>
  const double n2 = ak.squaredNorm();
  pe.kernel_action_norm = std::sqrt(n2);
  pe.defect = checked_defect(n2, std::norm(pe.symbol), lambda);
  return pe;
}

ScanValues GridEval::scan(const Eigen::MatrixXcd& entries) const {
  const Eigen::MatrixXcd ak = entries * khat_;
  const Eigen::RowVectorXd norms2 = ak.colwise().squaredNorm();
  const Eigen::RowVectorXcd syms = khat_.conjugate().cwiseProduct(ak).colwise().sum();

  ScanValues v;
  v.inf_defect = std::numeric_limits<double>::infinity();
  v.min_bernorm = std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < norms2.size(); ++idx) {
    const Complex lambda = grid_.node(idx);
    const double ber_here = std::abs(syms(idx));
    const double norm_here = std::sqrt(norms2(idx));
    const double defect_here = checked_defect(norms2(idx), std::norm(syms(idx)), lambda);
    if (ber_here > v.ber) {
      v.ber = ber_here;
      v.arg_ber = lambda;
    }
    if (norm_here > v.bernorm) {
      v.bernorm = norm_here;
      v.arg_bernorm = lambda;
    }
    if (norm_here < v.min_bernorm) {
      v.min_bernorm = norm_here;
      v.arg_min_bernorm = lambda;
    }
    if (defect_here < v.inf_defect) {
      v.inf_defect = defect_here;
      v.arg_inf_defect = lambda;
    }
  }
  return v;
}

std::vector<PointEval> GridEval::field(const Eigen::MatrixXcd& entries) const {
  const Eigen::MatrixXcd ak = entries * khat_;
  const Eigen::RowVectorXd norms2 = ak.colwise().squaredNorm();
  const Eigen::RowVectorXcd syms = khat_.conjugate().cwiseProduct(ak).colwise().sum();
  std::vector<PointEval> rows(static_cast<std::size_t>(norms2.size()));
  for (int idx = 0; idx < norms2.size(); ++idx) {
    PointEval& pe = rows[static_cast<std::size_t>(idx)];
    pe.lambda = grid_.node(idx);
    pe.symbol = syms(idx);
    pe.kernel_action_norm = std::sqrt(norms2(idx));
    pe.defect = checked_defect(norms2(idx), std::norm(syms(idx)), pe.lambda);
  }
  return rows;
}

namespace {

enum class Objective { MaxBer, MaxBernorm, MinDefect };

double objective_value(const PointEval& pe, Objective obj) {
  switch (obj) {
    case Objective::MaxBer: return std::abs(pe.symbol);
    case Objective::MaxBernorm: return pe.kernel_action_norm;
    case Objective::MinDefect: return -pe.defect;  // maximize the negation
  }
  return 0.0;
}

}  // namespace

std::vector<Complex> GridEval::refinement_probes(const Eigen::MatrixXcd& entries,
                                                 const ScanValues& base) const {
  std::vector<Complex> probes;
  if (grid_.refine.rounds == 0) return probes;

  const auto polar_of = [](Complex z, double& r, double& theta) {
    r = std::abs(z);
    theta = (r == 0.0) ? 0.0 : std::arg(z);
  };

  // Initial radial step: the largest gap adjacent to radius r on the grid.
  const auto radial_step = [&](double r) {
    const auto& rs = grid_.radial;
    double best = rs[1] - rs[0];
    for (std::size_t j = 1; j < rs.size(); ++j) {
      const double lo = rs[j - 1], hi = rs[j];
      if (r >= lo - 1e-15 && r <= hi + 1e-15) best = std::max(best, hi - lo);
    }
    return best;
  };

  for (Objective obj : {Objective::MaxBer, Objective::MaxBernorm, Objective::MinDefect}) {
    Complex start{};
    switch (obj) {
      case Objective::MaxBer: start = base.arg_ber; break;
      case Objective::MaxBernorm: start = base.arg_bernorm; break;
      case Objective::MinDefect: start = base.arg_inf_defect; break;
    }
    double r, theta;
    polar_of(start, r, theta);
    double dr = radial_step(r);
    double dth = 2.0 * std::numbers::pi / grid_.angular;
    double best;
    switch (obj) {
      case Objective::MaxBer: best = base.ber; break;
      case Objective::MaxBernorm: best = base.bernorm; break;
      case Objective::MinDefect: best = -base.inf_defect; break;
    }
    for (int round = 0; round < grid_.refine.rounds; ++round) {
      double cand_r = r, cand_theta = theta, cand_val = best;
      for (int sr = -1; sr <= 1; ++sr) {
        for (int st = -1; st <= 1; ++st) {
          if (sr == 0 && st == 0) continue;
          const double pr = std::clamp(r + sr * dr, 0.0, grid_.r_max);
          const double pth = theta + st * dth;
          const Complex p{pr * std::cos(pth), pr * std::sin(pth)};
          probes.push_back(p);
          const double val = objective_value(at(entries, p), obj);
          if (val > cand_val) {
            cand_val = val;
            cand_r = pr;
            cand_theta = pth;
          }
        }
      }
      r = cand_r;
      theta = cand_theta;
      best = cand_val;
      dr *= grid_.refine.shrink;
      dth *= grid_.refine.shrink;
    }
  }
  return probes;
}

void GridEval::rescore(const Eigen::MatrixXcd& entries, std::span<const Complex> points,
                       ScanValues& io) const {
  for (Complex p : points) {
    const PointEval pe = at(entries, p);
    const double ber_here = std::abs(pe.symbol);
    if (ber_here > io.ber) {
      io.ber = ber_here;
      io.arg_ber = p;
    }
    if (pe.kernel_action_norm > io.bernorm) {
      io.bernorm = pe.kernel_action_norm;
      io.arg_bernorm = p;
    }
    if (pe.kernel_action_norm < io.min_bernorm) {
      io.min_bernorm = pe.kernel_action_norm;
      io.arg_min_bernorm = p;
    }
    if (pe.defect < io.inf_defect) {
      io.inf_defect = pe.defect;
      io.arg_inf_defect = p;
    }
  }
}

ScanValues GridEval::refined_scan(const Eigen::MatrixXcd& entries) const {
  ScanValues v = scan(entries);
  const std::vector<Complex> probes = refinement_probes(entries, v);
  rescore(entries, probes, v);
  return v;
}

Complex berezin_symbol(const OperatorMatrix& a, Complex lambda) {
  const KernelVector kv = normalize(kernel_vector(a.space, lambda));
  return kv.coeffs.dot(a.entries * kv.coeffs);
}

std::vector<PointEval> symbol_field(const OperatorMatrix& a, const GridEval& ev) {
  return ev.field(a.entries);
}

BerezinEstimates berezin_estimates(const OperatorMatrix& a, const GridEval& ev,
                                   bool with_anchors) {
  const ScanValues v = ev.refined_scan(a.entries);
  BerezinEstimates est;
  est.ber_grid = v.ber;
  est.arg_ber = v.arg_ber;
  est.bernorm_grid = v.bernorm;
  est.arg_bernorm = v.arg_bernorm;
  est.inf_defect = v.inf_defect;
  est.arg_inf_defect = v.arg_inf_defect;
  if (with_anchors) {
    est.has_anchors = true;
    est.upper_anchor_w = numerical_radius(a);
    est.upper_anchor_norm = operator_norm(a);
    // The anchors certify upper bounds for the true suprema; a grid value
    // above them means a software bug.
    if (est.ber_grid > est.upper_anchor_w + 1e-9 ||
        est.ber_grid > est.bernorm_grid + 1e-9 ||
        est.bernorm_grid > est.upper_anchor_norm + 1e-9)
      throw NumericsError("grid estimate exceeds its certified upper anchor");
  }
  return est;
}

BerezinEstimates berezin_number(const OperatorMatrix& a, const GridEval& ev) {
  return berezin_estimates(a, ev, true);
}

BerezinEstimates berezin_norm(const OperatorMatrix& a, const GridEval& ev) {
  return berezin_estimates(a, ev, true);
}

double berezin_defect(const OperatorMatrix& a, Complex lambda) {
  const KernelVector kv = normalize(kernel_vector(a.space, lambda));
  const Eigen::VectorXcd ak = a.entries * kv.coeffs;
  const Complex sym = kv.coeffs.dot(ak);
  const double n2 = ak.squaredNorm();
  const double direct = n2 - std::norm(sym);
  const double residual = (ak - sym * kv.coeffs).squaredNorm();
  if (std::abs(direct - residual) > 1e-10 * (1.0 + n2))
    throw NumericsError("defect identity violated at lambda = (" +
                        std::to_string(lambda.real()) + ", " +
                        std::to_string(lambda.imag()) + "): " + std::to_string(direct) +
                        " vs " + std::to_string(residual));
  return checked_defect(n2, std::norm(sym), lambda);
}

double inf_defect(const OperatorMatrix& a, const GridEval& ev) {
  return ev.refined_scan(a.entries).inf_defect;
}

std::vector<RadialDefectSample> radial_defect_profile(const OperatorMatrix& a,
                                                      double theta,
                                                      std::span<const double> r_list) {
  const OperatorMatrix astar = adjoint(a);
  std::vector<RadialDefectSample> out;
  out.reserve(r_list.size());
  for (double r : r_list) {
    const Complex lambda{r * std::cos(theta), r * std::sin(theta)};
    RadialDefectSample s;
    s.r = r;
    s.defect = berezin_defect(a, lambda);
    s.adjoint_defect = berezin_defect(astar, lambda);
    out.push_back(s);
  }
  return out;
}

int symbol_injectivity_rank(const SpaceSpec& space, std::span<const Complex> points) {
  const int n = space.dim;
  const int p = static_cast<int>(points.size());
  if (p < n * n)
    throw UsageError("symbol_injectivity_rank: need at least dim^2 = " +
                     std::to_string(n * n) + " sample points, got " + std::to_string(p));
  // Row for point lambda: symbol of the matrix unit E_{jk} is
  // khat_k(lambda) * conj(khat_j(lambda)); column index j*n + k.
  Eigen::MatrixXcd m(p, n * n);
  for (int row = 0; row < p; ++row) {
    const KernelVector kv = normalize(kernel_vector(space, points[static_cast<std::size_t>(row)]));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        m(row, j * n + k) = kv.coeffs(k) * std::conj(kv.coeffs(j));
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cutoff = 1e-8 * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

void write_symbol_field_csv(std::ostream& os, std::span<const PointEval> rows) {
  os << "lambda_re,lambda_im,symbol_re,symbol_im,kernel_action_norm,defect\n";
  char buf[256];
  for (const PointEval& pe : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  pe.lambda.real(), pe.lambda.imag(), pe.symbol.real(),
                  pe.symbol.imag(), pe.kernel_action_norm, pe.defect);
    os << buf;
  }
}

}  // namespace berezin
