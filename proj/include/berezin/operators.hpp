#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "berezin/space.hpp"

namespace berezin {

/// Construction-class flags. Tags certify how an operator was built; the
/// numeric invariants behind them are enforced by the constructors and
/// re-checkable via verify_tags().
enum OpTag : unsigned {
  kTagNormal = 1u << 0,      // ||A*A - AA*|| <= 1e-9 ||A||^2
  kTagInvertible = 1u << 1,  // sigma_min >= 1e-10 sigma_max
  kTagShift = 1u << 2,       // compression of multiplication by z
  kTagRankOne = 1u << 3,     // rank-one model operator
};

/// Dense operator in the orthonormal basis: entries(i, j) = <A e_j, e_i>.
struct OperatorMatrix {
  SpaceSpec space;
  Eigen::MatrixXcd entries;
  unsigned tags = 0;

  int dim() const { return static_cast<int>(entries.rows()); }
  bool has_tag(OpTag t) const { return (tags & t) != 0; }
};

struct SpectralBounds {
  double op_norm = 0.0;      // largest singular value
  double num_radius = 0.0;   // numerical radius w(A)
  double min_singular = 0.0;
};

// Constructors -------------------------------------------------------------

/// Compression of multiplication by z to P_{N-1}. Hardy: ones on the first
/// subdiagonal; Bergman: subdiagonal entries sqrt((n+1)/(n+2)).
OperatorMatrix shift(const SpaceSpec& space);

/// S(I - SS*)S* on the Hardy model; equals the rank-one projection onto e_1
/// for every dim >= 2.
OperatorMatrix example36_operator(const SpaceSpec& space);

/// Analytic Toeplitz operator with polynomial symbol: sum_j poly[j] S^j.
OperatorMatrix toeplitz_analytic(const SpaceSpec& space, const std::vector<Complex>& poly);

OperatorMatrix diagonal(const SpaceSpec& space, const std::vector<Complex>& d);

OperatorMatrix identity(const SpaceSpec& space);
OperatorMatrix zero(const SpaceSpec& space);
OperatorMatrix from_entries(const SpaceSpec& space, Eigen::MatrixXcd entries, unsigned tags = 0);

/// Entries i.i.d. complex Gaussian, rescaled so the operator norm equals
/// `scale` exactly.
OperatorMatrix random_operator(const SpaceSpec& space, std::uint64_t seed, double scale = 1.0);

/// U diag(d) U* with U from the QR of a Gaussian matrix and d i.i.d. complex
/// Gaussian; tagged normal_by_construction.
OperatorMatrix random_normal(const SpaceSpec& space, std::uint64_t seed);

/// mu I + E with ||E|| = |mu|/2, hence sigma_min >= |mu|/2; tagged
/// invertible_by_construction.
OperatorMatrix random_invertible(const SpaceSpec& space, std::uint64_t seed, Complex mu);

/// Random unitary (QR of a Gaussian matrix); normal and invertible.
OperatorMatrix random_unitary(const SpaceSpec& space, std::uint64_t seed);

// Algebra -------------------------------------------------------------------

OperatorMatrix adjoint(const OperatorMatrix& a);
OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix add(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix subtract(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix scale(Complex c, const OperatorMatrix& a);
OperatorMatrix power(const OperatorMatrix& a, int n);

// Spectral machinery ---------------------------------------------------------

/// Largest singular value.
double operator_norm(const OperatorMatrix& a);
double operator_norm(const Eigen::MatrixXcd& m);

double min_singular_value(const OperatorMatrix& a);
double min_singular_value(const Eigen::MatrixXcd& m);

/// Numerical radius w(A) = max_theta lambda_max((e^{i theta}A + e^{-i theta}A*)/2),
/// by a dense theta sweep (>= 720 points) with golden-section refinement of
/// every near-optimal local maximum. Absolute accuracy ~1e-8 via the
/// Lipschitz bound |d lambda_max / d theta| <= ||A||.
double numerical_radius(const OperatorMatrix& a, int sweep_points = 720);

SpectralBounds spectral_bounds(const OperatorMatrix& a);

/// |B| = (B*B)^{1/2} by Hermitian eigendecomposition; eigenvalues clamped at
/// exactly 0 before the square root.
OperatorMatrix modulus(const OperatorMatrix& b);

/// Inverse, gated on sigma_min > 1e-12 sigma_max; the SingularityError
/// message names the singular-value ratio.
OperatorMatrix inverse(const OperatorMatrix& b);

/// ||B^{-1}|| = 1 / sigma_min(B), same gate as inverse().
double inverse_norm(const OperatorMatrix& b);

/// [T*, T] = T*T - TT*.
OperatorMatrix self_commutator(const OperatorMatrix& t);

/// Smallest eigenvalue of a Hermitian matrix; rejects inputs with
/// ||H - H*|| > 1e-9 ||H|| (Frobenius scale).
double min_eigenvalue_hermitian(const OperatorMatrix& h);

/// Re-check the numeric invariant behind each tag currently set.
bool verify_tags(const OperatorMatrix& a);

}  // namespace berezin
