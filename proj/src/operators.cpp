#include "berezin/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "berezin/rng.hpp"

namespace berezin {

namespace {

constexpr double kInvertibilityRatio = 1e-12;

void require_same_space(const OperatorMatrix& a, const OperatorMatrix& b,
                        const char* op) {
  if (!(a.space == b.space))
    throw UsageError(std::string(op) + ": operators live on different spaces (" +
                     to_string(a.space.kind) + " dim " + std::to_string(a.space.dim) +
                     " vs " + to_string(b.space.kind) + " dim " +
                     std::to_string(b.space.dim) + ")");
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  // BDC is accurate and fast here; it falls back to Jacobi for small sizes.
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

Eigen::MatrixXcd gaussian_matrix(int n, Rng& rng) {
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.cgaussian();
  return g;
}

double largest_hermitian_eigenvalue(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(h.rows() - 1);
}

}  // namespace

OperatorMatrix shift(const SpaceSpec& space) {
  const int n = space.dim;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    double w = 1.0;
    if (space.kind == SpaceKind::Bergman)
      w = std::sqrt(static_cast<double>(k + 1) / static_cast<double>(k + 2));
    s(k + 1, k) = w;
  }
  return OperatorMatrix{space, std::move(s), kTagShift};
}

OperatorMatrix example36_operator(const SpaceSpec& space) {
  if (space.kind != SpaceKind::Hardy)
    throw UsageError("example36_operator is defined on the Hardy model only");
  const OperatorMatrix s = shift(space);
  const Eigen::MatrixXcd& sm = s.entries;
  const Eigen::MatrixXcd inner =
      Eigen::MatrixXcd::Identity(space.dim, space.dim) - sm * sm.adjoint();
  Eigen::MatrixXcd a = sm * inner * sm.adjoint();
  return OperatorMatrix{space, std::move(a), kTagRankOne};
}

OperatorMatrix toeplitz_analytic(const SpaceSpec& space,
                                 const std::vector<Complex>& poly) {
  if (static_cast<int>(poly.size()) > space.dim)
    throw UsageError("toeplitz_analytic: polynomial degree " +
                     std::to_string(poly.size() - 1) + " too large for dim " +
                     std::to_string(space.dim));
  const int n = space.dim;
  const Eigen::MatrixXcd s = shift(space).entries;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd s_pow = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t j = 0; j < poly.size(); ++j) {
    acc += poly[j] * s_pow;
    if (j + 1 < poly.size()) s_pow = s * s_pow;
  }
  return OperatorMatrix{space, std::move(acc), 0};
}

OperatorMatrix diagonal(const SpaceSpec& space, const std::vector<Complex>& d) {
  if (static_cast<int>(d.size()) != space.dim)
    throw UsageError("diagonal: got " + std::to_string(d.size()) +
                     " entries for dim " + std::to_string(space.dim));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim, space.dim);
  for (int i = 0; i < space.dim; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return OperatorMatrix{space, std::move(m), kTagNormal};
}

OperatorMatrix identity(const SpaceSpec& space) {
  return OperatorMatrix{space, Eigen::MatrixXcd::Identity(space.dim, space.dim),
                        kTagNormal | kTagInvertible};
}

OperatorMatrix zero(const SpaceSpec& space) {
  return OperatorMatrix{space, Eigen::MatrixXcd::Zero(space.dim, space.dim), kTagNormal};
}

OperatorMatrix from_entries(const SpaceSpec& space, Eigen::MatrixXcd entries,
                            unsigned tags) {
  if (entries.rows() != space.dim || entries.cols() != space.dim)
    throw UsageError("from_entries: matrix is " + std::to_string(entries.rows()) + "x" +
                     std::to_string(entries.cols()) + " but space dim is " +
                     std::to_string(space.dim));
  return OperatorMatrix{space, std::move(entries), tags};
}

OperatorMatrix random_operator(const SpaceSpec& space, std::uint64_t seed, double scale) {
  if (!(scale > 0.0)) throw UsageError("random_operator: scale must be positive");
  Rng rng(seed);
  Eigen::MatrixXcd g = gaussian_matrix(space.dim, rng);
  g *= scale / singular_values(g)(0);
  return OperatorMatrix{space, std::move(g), 0};
}

OperatorMatrix random_unitary(const SpaceSpec& space, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::MatrixXcd g = gaussian_matrix(space.dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  return OperatorMatrix{space, std::move(q), kTagNormal | kTagInvertible};
}

OperatorMatrix random_normal(const SpaceSpec& space, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::MatrixXcd g = gaussian_matrix(space.dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  const Eigen::MatrixXcd q = qr.householderQ();
  Eigen::VectorXcd d(space.dim);
  for (int i = 0; i < space.dim; ++i) d(i) = rng.cgaussian();
  Eigen::MatrixXcd m = q * d.asDiagonal() * q.adjoint();
  return OperatorMatrix{space, std::move(m), kTagNormal};
}

OperatorMatrix random_invertible(const SpaceSpec& space, std::uint64_t seed, Complex mu) {
  if (!(std::abs(mu) > 0.0)) throw UsageError("random_invertible: mu must be nonzero");
  Rng rng(seed);
  Eigen::MatrixXcd e = gaussian_matrix(space.dim, rng);
  e *= (std::abs(mu) / 2.0) / singular_values(e)(0);
  Eigen::MatrixXcd m = mu * Eigen::MatrixXcd::Identity(space.dim, space.dim) + e;
  return OperatorMatrix{space, std::move(m), kTagInvertible};
}

OperatorMatrix adjoint(const OperatorMatrix& a) {
  unsigned tags = a.tags & (kTagNormal | kTagInvertible);
  return OperatorMatrix{a.space, a.entries.adjoint(), tags};
}

OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b, "multiply");
  return OperatorMatrix{a.space, a.entries * b.entries, 0};
}

OperatorMatrix add(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b, "add");
  return OperatorMatrix{a.space, a.entries + b.entries, 0};
}

OperatorMatrix subtract(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b, "subtract");
  return OperatorMatrix{a.space, a.entries - b.entries, 0};
}

OperatorMatrix scale(Complex c, const OperatorMatrix& a) {
  unsigned tags = a.tags & kTagNormal;
  if (std::abs(c) > 0.0) tags |= a.tags & kTagInvertible;
  return OperatorMatrix{a.space, c * a.entries, tags};
}

OperatorMatrix power(const OperatorMatrix& a, int n) {
  if (n < 0) throw UsageError("power: negative exponent");
  OperatorMatrix acc = identity(a.space);
  for (int i = 0; i < n; ++i) acc = multiply(acc, a);
  if (a.has_tag(kTagNormal)) acc.tags |= kTagNormal;
  return acc;
}

double operator_norm(const Eigen::MatrixXcd& m) { return singular_values(m)(0); }

double operator_norm(const OperatorMatrix& a) { return operator_norm(a.entries); }

double min_singular_value(const Eigen::MatrixXcd& m) {
  const Eigen::VectorXd sv = singular_values(m);
  return sv(sv.size() - 1);
}

double min_singular_value(const OperatorMatrix& a) {
  return min_singular_value(a.entries);
}

double numerical_radius(const OperatorMatrix& a, int sweep_points) {
  const Eigen::MatrixXcd& m = a.entries;
  if (m.norm() == 0.0) return 0.0;
  sweep_points = std::max(sweep_points, 720);

  const Eigen::MatrixXcd madj = m.adjoint();
  auto rotated_max = [&](double theta) {
    const Complex phase{std::cos(theta), std::sin(theta)};
    const Eigen::MatrixXcd h = 0.5 * (phase * m + std::conj(phase) * madj);
    return largest_hermitian_eigenvalue(h);
  };

  std::vector<double> values(static_cast<std::size_t>(sweep_points));
  const double h = 2.0 * std::numbers::pi / sweep_points;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < sweep_points; ++i) {
    values[static_cast<std::size_t>(i)] = rotated_max(i * h);
    best = std::max(best, values[static_cast<std::size_t>(i)]);
  }

  // lambda_max(theta) is Lipschitz with constant ||A|| <= ||A||_F, so only
  // local maxima within 2 L h of the sweep maximum can hide the true peak.
  const double lipschitz = m.norm();
  const double cutoff = best - 2.0 * lipschitz * h;

  const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < sweep_points; ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    const double prev = values[static_cast<std::size_t>((i + sweep_points - 1) % sweep_points)];
    const double next = values[static_cast<std::size_t>((i + 1) % sweep_points)];
    if (v < prev || v < next || v < cutoff) continue;
    double lo = (i - 1) * h, hi = (i + 1) * h;
    double x1 = hi - inv_golden * (hi - lo);
    double x2 = lo + inv_golden * (hi - lo);
    double f1 = rotated_max(x1), f2 = rotated_max(x2);
    while (hi - lo > 1e-10) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_golden * (hi - lo);
        f2 = rotated_max(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_golden * (hi - lo);
        f1 = rotated_max(x1);
      }
      best = std::max(best, std::max(f1, f2));
    }
  }
  return best;
}

SpectralBounds spectral_bounds(const OperatorMatrix& a) {
  const Eigen::VectorXd sv = singular_values(a.entries);
  SpectralBounds b;
  b.op_norm = sv(0);
  b.min_singular = sv(sv.size() - 1);
  b.num_radius = numerical_radius(a);
  return b;
}

OperatorMatrix modulus(const OperatorMatrix& b) {
  const Eigen::MatrixXcd gram = b.entries.adjoint() * b.entries;
  const Eigen::MatrixXcd herm = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
  Eigen::MatrixXcd root =
      es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  root = 0.5 * (root + root.adjoint()).eval();
  return OperatorMatrix{b.space, std::move(root), kTagNormal};
}

namespace {

double gated_min_singular(const OperatorMatrix& b, const char* op) {
  const Eigen::VectorXd sv = singular_values(b.entries);
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > kInvertibilityRatio * smax)) {
    std::ostringstream msg;
    msg << op << ": matrix is numerically singular, sigma_min/sigma_max = ";
    if (smax == 0.0)
      msg << "0/0";
    else
      msg << smin / smax;
    msg << " (threshold " << kInvertibilityRatio << ")";
    throw SingularityError(msg.str());
  }
  return smin;
}

}  // namespace

OperatorMatrix inverse(const OperatorMatrix& b) {
  gated_min_singular(b, "inverse");
  Eigen::MatrixXcd inv = b.entries.partialPivLu().inverse();
  return OperatorMatrix{b.space, std::move(inv), b.tags & (kTagNormal | kTagInvertible)};
}

double inverse_norm(const OperatorMatrix& b) {
  return 1.0 / gated_min_singular(b, "inverse_norm");
}

OperatorMatrix self_commutator(const OperatorMatrix& t) {
  const Eigen::MatrixXcd& m = t.entries;
  Eigen::MatrixXcd c = m.adjoint() * m - m * m.adjoint();
  return OperatorMatrix{t.space, std::move(c), 0};
}

double min_eigenvalue_hermitian(const OperatorMatrix& h) {
  const Eigen::MatrixXcd& m = h.entries;
  const double dev = (m - m.adjoint()).norm();
  if (dev > 1e-9 * std::max(m.norm(), 1e-300))
    throw UsageError("min_eigenvalue_hermitian: input is not Hermitian, ||H - H*|| = " +
                     std::to_string(dev));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool verify_tags(const OperatorMatrix& a) {
  const Eigen::MatrixXcd& m = a.entries;
  if (m.rows() != m.cols() || m.rows() != a.space.dim) return false;
  if (a.has_tag(kTagNormal)) {
    const double comm = (m.adjoint() * m - m * m.adjoint()).norm();
    const double scale2 = std::max(m.norm() * m.norm(), 1e-300);
    if (comm > 1e-9 * scale2) return false;
  }
  if (a.has_tag(kTagInvertible)) {
    const Eigen::VectorXd sv = singular_values(m);
    if (!(sv(sv.size() - 1) >= 1e-10 * sv(0))) return false;
  }
  return true;
}

}  // namespace berezin
